#pragma once

// Independent reference computations used by the unit tests. Nothing here
// calls into the library beyond LatticeMatrix construction.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "decayinv/lattice_matrix.hpp"

namespace oracle {

using decayinv::cplx;

/// sum_{k >= 0} (1 + k)^r e^{-gamma k}, brute force in long double until the
/// terms are negligible past the peak.
inline double poly_geometric_sum(double r, double gamma) {
  long double s = 0.0L;
  const long double g = gamma;
  for (long k = 0;; ++k) {
    const long double t = std::pow(1.0L + k, static_cast<long double>(r)) * std::exp(-g * k);
    s += t;
    if (k > static_cast<long>(r / gamma) + 10 && t < 1e-22L * s) break;
  }
  return static_cast<double>(s);
}

/// sum_{j >= 1} j^k e^{-gamma j}.
inline double moment_geometric_sum(int k, double gamma) {
  long double s = 0.0L;
  for (long j = 1;; ++j) {
    const long double t = std::pow(static_cast<long double>(j), k) * std::exp(-static_cast<long double>(gamma) * j);
    s += t;
    if (j > static_cast<long>(k / gamma) + 10 && t < 1e-22L * s) break;
  }
  return static_cast<double>(s);
}

/// phi_s(x) = sum x^l / l!^s by plain forward recursion in long double.
inline double phi(double s, double x) {
  long double term = 1.0L, sum = 1.0L;
  for (long l = 1; l < 100000; ++l) {
    term *= static_cast<long double>(x) / std::pow(static_cast<long double>(l), static_cast<long double>(s));
    sum += term;
    if (l > std::pow(x, 1.0 / s) + 5 && term < 1e-22L * sum) break;
  }
  return static_cast<double>(sum);
}

inline std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

/// Dense random complex matrix with entries of modulus at most 1.
inline decayinv::LatticeMatrix random_matrix(decayinv::IndexWindow w, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return decayinv::LatticeMatrix::from_function(w, [&](long, long) { return cplx(u(rng), u(rng)) * 0.7; });
}

/// I - eps * B with |B(k,l)| <= (1 + |k-l|)^{-r}.
inline decayinv::LatticeMatrix random_decay_matrix(decayinv::IndexWindow w, double eps, double r,
                                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.7, 0.7);
  return decayinv::LatticeMatrix::from_function(w, [&](long k, long l) {
    const double env = std::pow(1.0 + std::abs(static_cast<double>(k - l)), -r);
    return cplx(k == l ? 1.0 : 0.0) - eps * env * cplx(u(rng), u(rng));
  });
}

/// Max-entry difference on the window shrunk by margin.
inline double max_abs_diff(const decayinv::LatticeMatrix& a, const decayinv::LatticeMatrix& b, long margin) {
  const long n = a.size();
  double m = 0.0;
  for (long i = margin; i < n - margin; ++i)
    for (long j = margin; j < n - margin; ++j) m = std::max(m, std::abs(a.entries()(i, j) - b.entries()(i, j)));
  return m;
}

/// Golden-section maximization of f on [a, b].
template <class F>
double golden_max(F&& f, double a, double b, int iters = 200) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a), d = a + g * (b - a);
  for (int i = 0; i < iters; ++i) {
    if (f(c) > f(d)) b = d;
    else a = c;
    c = b - g * (b - a);
    d = a + g * (b - a);
  }
  return f(0.5 * (a + b));
}

}  // namespace oracle
