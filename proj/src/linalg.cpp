#include "fgw/linalg.hpp"

#include <stdexcept>

namespace fgw {

Vec zero_vec(std::size_t n, int conductor) { return Vec(n, CycScalar::zero(conductor)); }

Vec unit_vec(std::size_t n, std::size_t i, int conductor) {
  Vec v = zero_vec(n, conductor);
  v[i] = CycScalar::one(conductor);
  return v;
}

bool is_zero(const Vec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

Vec operator+(const Vec& a, const Vec& b) {
  Vec r = a;
  for (std::size_t i = 0; i < r.size(); ++i)
    if (!b[i].is_zero()) r[i] += b[i];
  return r;
}

Vec operator-(const Vec& a, const Vec& b) {
  Vec r = a;
  for (std::size_t i = 0; i < r.size(); ++i)
    if (!b[i].is_zero()) r[i] -= b[i];
  return r;
}

Vec& operator+=(Vec& a, const Vec& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!b[i].is_zero()) a[i] += b[i];
  return a;
}

Vec& operator-=(Vec& a, const Vec& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!b[i].is_zero()) a[i] -= b[i];
  return a;
}

Vec operator-(const Vec& a) {
  Vec r = a;
  for (auto& x : r)
    if (!x.is_zero()) x = -x;
  return r;
}

Vec operator*(const CycScalar& s, const Vec& v) {
  Vec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) r[i] = s * v[i];
  return r;
}

void axpy(Vec& y, const CycScalar& s, const Vec& x) {
  if (s.is_zero()) return;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) y[i] += s * x[i];
}

std::vector<std::size_t> nonzero_indices(const Vec& v) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) out.push_back(i);
  return out;
}

Mat Mat::identity(std::size_t n, int conductor) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = CycScalar::one(conductor);
  return m;
}

Mat Mat::from_columns(const std::vector<Vec>& cols) {
  if (cols.empty()) return Mat();
  Mat m(cols[0].size(), cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) m.set_column(c, cols[c]);
  return m;
}

Vec Mat::column(std::size_t c) const {
  Vec v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

void Mat::set_column(std::size_t c, const Vec& v) {
  if (v.size() != rows_) throw std::invalid_argument("Mat::set_column: size mismatch");
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

Vec Mat::apply(const Vec& v) const {
  if (v.size() != cols_) throw std::invalid_argument("Mat::apply: size mismatch");
  Vec out(rows_);
  for (std::size_t c = 0; c < cols_; ++c) {
    if (v[c].is_zero()) continue;
    for (std::size_t r = 0; r < rows_; ++r) {
      const CycScalar& a = (*this)(r, c);
      if (!a.is_zero()) out[r] += a * v[c];
    }
  }
  return out;
}

Mat Mat::operator*(const Mat& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("Mat::operator*: shape mismatch");
  Mat out(rows_, o.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      const CycScalar& a = (*this)(r, k);
      if (a.is_zero()) continue;
      for (std::size_t c = 0; c < o.cols_; ++c) {
        const CycScalar& b = o(k, c);
        if (!b.is_zero()) out(r, c) += a * b;
      }
    }
  return out;
}

bool Mat::operator==(const Mat& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

std::optional<Mat> Mat::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  const std::size_t n = rows_;
  Mat a = *this;
  Mat inv = identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a(piv, c).is_zero()) ++piv;
    if (piv == n) return std::nullopt;
    if (piv != c)
      for (std::size_t k = 0; k < n; ++k) {
        std::swap(a(piv, k), a(c, k));
        std::swap(inv(piv, k), inv(c, k));
      }
    CycScalar s = a(c, c).inverse();
    for (std::size_t k = 0; k < n; ++k) {
      if (!a(c, k).is_zero()) a(c, k) = a(c, k) * s;
      if (!inv(c, k).is_zero()) inv(c, k) = inv(c, k) * s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a(r, c).is_zero()) continue;
      CycScalar f = a(r, c);
      for (std::size_t k = 0; k < n; ++k) {
        if (!a(c, k).is_zero()) a(r, k) -= f * a(c, k);
        if (!inv(c, k).is_zero()) inv(r, k) -= f * inv(c, k);
      }
    }
  }
  return inv;
}

std::size_t Mat::rank() const {
  EchelonSpan span(rows_);
  for (std::size_t c = 0; c < cols_; ++c) span.insert(column(c), {});
  return span.size();
}

bool EchelonSpan::insert(Vec v, Vec img, Vec* residual_image) {
  const bool track = !img.empty();
  for (const auto& row : rows_) {
    const CycScalar& lead = v[row.pivot];
    if (lead.is_zero()) continue;
    CycScalar f = lead;
    axpy(v, -f, row.vec);
    if (track) axpy(img, -f, row.img);
  }
  std::size_t piv = 0;
  while (piv < v.size() && v[piv].is_zero()) ++piv;
  if (piv == v.size()) {
    if (residual_image != nullptr) *residual_image = std::move(img);
    return false;
  }
  CycScalar s = v[piv].inverse();
  v = s * v;
  if (track) img = s * img;
  rows_.push_back({std::move(v), std::move(img), piv});
  return true;
}

bool EchelonSpan::contains(Vec v) const {
  for (const auto& row : rows_) {
    const CycScalar& lead = v[row.pivot];
    if (lead.is_zero()) continue;
    CycScalar f = lead;
    axpy(v, -f, row.vec);
  }
  return is_zero(v);
}

std::optional<Vec> EchelonSpan::image(Vec v) const {
  Vec img;
  for (const auto& row : rows_) {
    const CycScalar& lead = v[row.pivot];
    if (lead.is_zero()) continue;
    CycScalar f = lead;
    axpy(v, -f, row.vec);
    if (img.empty()) img = zero_vec(row.img.size(), f.conductor());
    axpy(img, f, row.img);
  }
  if (!is_zero(v)) return std::nullopt;
  return img;
}

}  // namespace fgw
