#pragma once
// Independent reference computations for the unit tests. Nothing here calls
// into the library code under test.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace oracle {

using LC = std::complex<long double>;
using C = std::complex<double>;

/// Power-sum evaluation in extended precision.
inline C eval(const std::vector<C>& coeffs, C z) {
  LC acc = 0, zk = 1;
  for (C c : coeffs) {
    acc += LC(c) * zk;
    zk *= LC(z);
  }
  return C(acc);
}

/// Schoolbook product.
inline std::vector<C> mul(const std::vector<C>& a, const std::vector<C>& b) {
  std::vector<C> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

/// Monic polynomial with the given roots.
inline std::vector<C> from_roots(const std::vector<C>& rs) {
  std::vector<C> p{1.0};
  for (C r : rs) p = mul(p, {-r, 1.0});
  return p;
}

inline bool close(C a, C b, double tol) { return std::abs(a - b) <= tol * (1.0 + std::abs(b)); }

inline C random_point(std::mt19937_64& rng, double r) {
  std::uniform_real_distribution<double> u(-r, r);
  return {u(rng), u(rng)};
}

/// Multiset match of two point lists under tolerance, by greedy pairing.
inline bool same_points(std::vector<C> a, std::vector<C> b, double tol) {
  if (a.size() != b.size()) return false;
  for (C x : a) {
    std::size_t best = b.size();
    double bd = tol;
    for (std::size_t k = 0; k < b.size(); ++k)
      if (std::abs(b[k] - x) <= bd) {
        bd = std::abs(b[k] - x);
        best = k;
      }
    if (best == b.size()) return false;
    b.erase(b.begin() + static_cast<long>(best));
  }
  return true;
}

}  // namespace oracle
