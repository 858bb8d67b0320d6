// Dense vectors and matrices over Q(zeta_N), with sparse-aware loops.

#ifndef FGW_LINALG_HPP_
#define FGW_LINALG_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "fgw/scalars.hpp"

namespace fgw {

using Vec = std::vector<CycScalar>;

Vec zero_vec(std::size_t n, int conductor = 1);
Vec unit_vec(std::size_t n, std::size_t i, int conductor = 1);
bool is_zero(const Vec& v);
Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator-(const Vec& a);
Vec operator*(const CycScalar& s, const Vec& v);
Vec& operator+=(Vec& a, const Vec& b);
Vec& operator-=(Vec& a, const Vec& b);
// y += s * x
void axpy(Vec& y, const CycScalar& s, const Vec& x);
// Nonzero coordinate indices.
std::vector<std::size_t> nonzero_indices(const Vec& v);

class Mat {
public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static Mat identity(std::size_t n, int conductor = 1);
  static Mat from_columns(const std::vector<Vec>& cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  CycScalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const CycScalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vec column(std::size_t c) const;
  void set_column(std::size_t c, const Vec& v);
  Vec apply(const Vec& v) const;
  Mat operator*(const Mat& o) const;
  bool operator==(const Mat& o) const;
  bool operator!=(const Mat& o) const { return !(*this == o); }

  std::optional<Mat> inverse() const;
  std::size_t rank() const;

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<CycScalar> data_;
};

// Incrementally maintained reduced echelon basis of a span of vectors, each
// paired with an "image" vector that undergoes the same row operations. Used
// to decide whether a new vector is dependent and, if so, which combination of
// the stored images it corresponds to.
class EchelonSpan {
public:
  explicit EchelonSpan(std::size_t dim) : dim_(dim) {}

  std::size_t size() const { return rows_.size(); }
  std::size_t dim() const { return dim_; }

  // Reduces (v, img) against the span. Returns true if v was independent (and
  // was inserted). On false, `residual_image` holds img minus the image of
  // the combination that produced v; a consistent linear map needs it zero.
  bool insert(Vec v, Vec img, Vec* residual_image = nullptr);

  // Contains v?
  bool contains(Vec v) const;
  // Image of v under the linear map spanned so far, if v lies in the span.
  std::optional<Vec> image(Vec v) const;

private:
  struct Row {
    Vec vec;
    Vec img;
    std::size_t pivot;
  };
  std::size_t dim_;
  std::vector<Row> rows_;  // each row vanishes on the pivots of earlier rows
};

}  // namespace fgw

#endif  // FGW_LINALG_HPP_
