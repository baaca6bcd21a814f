#pragma once

// Seeded test operands A = I - eps B with |B(k,l)| <= (1 + |k-l|)^{-r}.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "decayinv/lattice_matrix.hpp"

namespace decayinv {

/// B(k,l) = u_{kl} (1 + |k-l|)^{-r}, u_{kl} uniform on the closed unit disc.
inline LatticeMatrix random_decay_part(IndexWindow w, double r, std::uint64_t seed) {
  if (!(r > 0.0)) throw ParameterError("random_decay_part: r must be positive");
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const long n = w.size();
  CMatrix b(n, n);
  // column-major fill order is part of the reproducibility contract
  for (long j = 0; j < n; ++j)
    for (long i = 0; i < n; ++i) {
      const double rad = std::sqrt(unif(gen));
      const double ang = unif(gen);
      b(i, j) = rad * unit_phase(ang) * std::pow(1.0 + std::abs(static_cast<double>(i - j)), -r);
    }
  return LatticeMatrix(w, std::move(b));
}

/// A = I - eps B. Invertible by the Neumann series whenever eps ||B|| < 1;
/// ||A||_{J_r} <= 1 + eps.
inline LatticeMatrix random_decay_matrix(IndexWindow w, double eps, double r, std::uint64_t seed) {
  if (!(eps >= 0.0)) throw ParameterError("random_decay_matrix: eps must be nonnegative");
  return LatticeMatrix::identity(w).as_general() - eps * random_decay_part(w, r, seed);
}

}  // namespace decayinv
