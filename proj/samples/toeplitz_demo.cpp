// Norms of C_gamma = I - e^{-gamma} T_1 and its inverse against the Baskakov
// and explicit bounds as gamma shrinks.

#include <cstdio>

#include "decayinv/decayinv.hpp"

using namespace decayinv;

int main() {
  const IndexWindow w(-32, 31);
  const double r = 1.0;
  std::printf("%8s %12s %14s %14s %14s %14s\n", "gamma", "||C||_Cr", "||C^-1||_Cr", "baskakov", "explicit", "besov_r=0.5");
  for (double g : {0.4, 0.2, 0.1, 0.05, 0.025}) {
    const LatticeMatrix c = c_gamma(g, w);
    const LatticeMatrix inv = *exact_toeplitz_inverse(c);
    const SpectralData sd = spectral_data(c);
    const double ncr = cv_norm(c, Weight::polynomial(r));
    const BoundReport bask = baskakov_bound_Cr(c, r);
    const BoundReport expl = explicit_bound_Cr(ncr, sd.norm_A_op, sd.norm_Ainv_op, r);
    std::printf("%8.3f %12.6g %14.6g %14.6g %14.6g %14.6g\n", g, ncr, cv_norm(inv, Weight::polynomial(r)),
                bask.bound_value, expl.bound_value, besov_seminorm(inv, 1.0, 0.5).value);
  }
  return 0;
}
