#pragma once

#include <random>

#include "fgw/scalars.hpp"

namespace fgw::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20240611);
  return g;
}

// Random element of Q(zeta_N) with small numerators and denominators.
inline CycScalar random_scalar(int conductor, int density_pct = 70) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4), pct(0, 99);
  std::vector<std::pair<long, Rational>> terms;
  int d = euler_phi(conductor);
  for (int k = 0; k < d; ++k)
    if (pct(rng()) < density_pct) terms.emplace_back(k, Rational(num(rng()), den(rng())));
  return CycScalar::from_powers(conductor, terms);
}

}  // namespace fgw::testing

#include "fgw/linalg.hpp"

namespace fgw::testing {

// Random vector with small rational entries (some zero) and, optionally,
// random root-of-unity factors in Q(zeta_N).
inline Vec random_vec(std::size_t n, int conductor, bool roots = false) {
  std::uniform_int_distribution<int> num(-3, 3), den(1, 2), e(0, conductor - 1);
  Vec v(n, CycScalar::zero(conductor));
  for (auto& x : v) {
    x = CycScalar(Rational(num(rng()), den(rng())), conductor);
    if (roots) x = x * CycScalar::root_of_unity(conductor, e(rng()));
  }
  return v;
}

}  // namespace fgw::testing
