#pragma once

// Norm-controlled inversion bounds with their intermediate quantities:
// Baskakov's C_r / J_r bounds, their explicit power-law forms, the
// derivation-domain, Besov, Bessel and Dales-Davie controls, and the
// super-polynomial composition. Large values live in log space.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/SVD>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/zeta.hpp>

#include "decayinv/errors.hpp"
#include "decayinv/lattice_matrix.hpp"
#include "decayinv/norms.hpp"
#include "decayinv/numerics.hpp"
#include "decayinv/weights.hpp"

namespace decayinv {

struct BoundInputs {
  double norm_A_alg = kNaN;
  double norm_A_op = kNaN;
  double norm_Ainv_op = kNaN;
  double r = kNaN;
  std::map<std::string, double> auxiliary;
};

struct BoundReport {
  std::string bound_name;
  BoundInputs inputs;
  std::map<std::string, double> intermediates;
  std::vector<double> a_m;
  double log_bound = kNaN;
  double bound_value = kNaN;   ///< exp(log_bound); may be +inf
  double rate_exponent = kNaN;  ///< power of ||a^{-1}|| in the normalized regime
  bool symbolic_constant = false;  ///< unknown constant set to 1: a rate, not a bound
  bool inconclusive = false;
  std::optional<double> measured_value;
  double measured_error = 0.0;
  std::optional<bool> satisfied;

  void set_log_bound(double lb) {
    log_bound = lb;
    bound_value = std::exp(lb);
  }

  /// Records a measurement. Rate-only reports keep the ratio but no verdict.
  void set_measured(double m, double err = 0.0) {
    measured_value = m;
    measured_error = err;
    const double log_ratio = (m > 0.0 ? std::log(m) : -kInf) - log_bound;
    intermediates["measured_over_bound"] = std::exp(log_ratio);
    if (symbolic_constant || inconclusive) {
      satisfied.reset();
      return;
    }
    satisfied = log_ratio <= 0.0;
  }
};

namespace detail {

inline double log_add(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(-std::abs(a - b)));
}

/// log((q^k - 1) / (q - 1)) for q > 0, k >= 1; the q = 1 limit is log k.
inline double log_geometric_factor(double q, int k) {
  if (std::abs(q - 1.0) < 1e-12) return std::log(static_cast<double>(k));
  const double lq = std::log(q);
  if (q > 1.0) return k * lq + std::log1p(-std::exp(-k * lq)) - std::log(q - 1.0);
  return std::log1p(-std::exp(k * lq)) - std::log1p(-q);
}

inline void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) throw ParameterError(std::string(what) + " must be positive and finite");
}

}  // namespace detail

// ---------------------------------------------------------------- spectral data

struct SpectralData {
  double norm_A_op = kNaN;
  double norm_Ainv_op = kNaN;
  double kappa = kNaN;
  bool from_symbol = false;  ///< exact l^2(Z) values from the symbol
};

/// ||A||, ||A^{-1}|| and kappa = ||A|| ||A^{-1}|| on l^2. Toeplitz operands
/// use the symbol extrema; others the singular values of the window section.
inline SpectralData spectral_data(const LatticeMatrix& a) {
  SpectralData out;
  if (const ToeplitzSymbol* s = a.symbol()) {
    const auto& cf = s->closed_form();
    if (!cf || cf->derivative_order == 0) {
      const SymbolExtrema e = symbol_extrema(*s);
      if (!(e.min_modulus > 1e-14 * e.max_modulus))
        throw SingularityError("spectral_data: symbol vanishes on the circle", e.min_modulus);
      out.norm_A_op = e.max_modulus;
      out.norm_Ainv_op = 1.0 / e.min_modulus;
      out.kappa = out.norm_A_op * out.norm_Ainv_op;
      out.from_symbol = true;
      return out;
    }
  }
  Eigen::BDCSVD<CMatrix> svd(a.entries());
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  if (!(smin > 1e-14 * sv(0))) throw SingularityError("spectral_data: singular window section", sv(0) > 0.0 ? smin / sv(0) : 0.0);
  out.norm_A_op = sv(0);
  out.norm_Ainv_op = 1.0 / smin;
  out.kappa = out.norm_A_op * out.norm_Ainv_op;
  return out;
}

inline double condition_kappa(const LatticeMatrix& a) { return spectral_data(a).kappa; }

struct MeasuredInverse {
  LatticeMatrix inverse;
  bool closed_form = false;
};

/// Closed-form inverse for Toeplitz operands that admit one, otherwise the
/// inverse of the window section (exact for A_N + I off the window).
inline MeasuredInverse measured_inverse(const LatticeMatrix& a) {
  if (a.symbol())
    if (auto inv = exact_toeplitz_inverse(a)) return {std::move(*inv), true};
  return {invert_truncated(a), false};
}

// ---------------------------------------------------------------- series

struct GeometricMoment {
  double value = 0.0;
  double log_value = -kInf;
  double rel_tail = 0.0;
  double log_lower = kNaN;  ///< log(e^g Gamma(r+1) g^{-r-1})
  double log_upper = kNaN;  ///< log 2 + log_lower
  long long terms = 0;
  bool euler_maclaurin = false;

  bool in_bracket() const { return log_value >= log_lower && log_value <= log_upper; }
};

/// S = sum_{k >= 0} (1+k)^r e^{-g k}, with the integral-test bracket.
/// Direct summation; for very small g the tail beyond k = 2000 is replaced by
/// its Euler-Maclaurin expansion (integral via the incomplete gamma function).
inline GeometricMoment geometric_moment_sum(double g, double r, double rel_tol = 1e-16) {
  if (!(g > 0.0)) throw ParameterError("geometric_moment_sum: g must be positive");
  if (!(r >= 0.0)) throw ParameterError("geometric_moment_sum: r must be nonnegative");
  GeometricMoment out;
  out.log_lower = g + std::lgamma(r + 1.0) - (r + 1.0) * std::log(g);
  out.log_upper = std::log(2.0) + out.log_lower;
  auto log_term = [&](long long k) { return r * std::log1p(static_cast<double>(k)) - g * static_cast<double>(k); };

  const double expected_terms = (r + 40.0) / g;
  if (expected_terms < 5e7) {
    const SeriesResult s = sum_log_series(log_term, 0, rel_tol);
    out.log_value = s.log_value;
    out.rel_tail = s.rel_tail;
    out.terms = s.terms;
  } else {
    constexpr long long K = 2000;
    LogSum acc;
    for (long long k = 0; k < K; ++k) acc.add_log(log_term(k));
    const double x = static_cast<double>(K);
    // int_K^inf (1+x)^r e^{-gx} dx = e^g g^{-r-1} Gamma(r+1, g(1+K))
    const double log_int = g - (r + 1.0) * std::log(g) + std::log(boost::math::tgamma(r + 1.0, g * (1.0 + x)));
    const double lf = log_term(K);
    const double u1 = r / (1.0 + x) - g, u2 = -r / ((1.0 + x) * (1.0 + x)), u3 = 2.0 * r / std::pow(1.0 + x, 3);
    const double corr = 0.5 - u1 / 12.0 + (u1 * u1 * u1 + 3.0 * u1 * u2 + u3) / 720.0;
    acc.add_log(log_int);
    acc.add_log(lf + std::log(corr));
    out.log_value = acc.log();
    out.rel_tail = std::exp(lf - out.log_value) * 1e-12;
    out.terms = K;
    out.euler_maclaurin = true;
  }
  out.value = std::exp(out.log_value);
  return out;
}

struct EllResult {
  double value = 0.0;
  double log_value = -kInf;
  double beta = 0.0;
  double gamma = 0.0;  ///< log 1/(1 - beta)
  GeometricMoment series;
};

/// l_r = 8 ||A^{-1}|| sum_k (1 - beta)^k (1+k)^r, beta = 1/(24 kappa + 1).
inline EllResult ell_r(double norm_Ainv_op, double kappa, double r) {
  detail::require_positive(norm_Ainv_op, "ell_r: ||A^{-1}||");
  if (!(kappa >= 1.0 - 1e-9)) throw ParameterError("ell_r: kappa must be at least 1");
  if (!(r > 0.0)) throw ParameterError("ell_r: r must be positive");
  EllResult out;
  out.beta = 1.0 / (24.0 * std::max(kappa, 1.0) + 1.0);
  out.gamma = -std::log1p(-out.beta);
  out.series = geometric_moment_sum(out.gamma, r);
  out.log_value = std::log(8.0) + std::log(norm_Ainv_op) + out.series.log_value;
  out.value = std::exp(out.log_value);
  return out;
}

struct EllTildeResult {
  double value = 0.0;
  double log_value = -kInf;
  double beta = 0.0;
  double gamma_r = 0.0;
  long long argmax_k = 0;
  double log_sup = 0.0;  ///< log max_k (1 - beta)^k (1+k)^r
};

/// l~_r = gamma_r ||A^{-1}|| max_k (1 - beta)^k (1+k)^r, r > 1.
inline EllTildeResult ell_tilde_r(double norm_Ainv_op, double kappa, double r) {
  if (!(r > 1.0)) throw ParameterError("ell_tilde_r: r must exceed 1");
  detail::require_positive(norm_Ainv_op, "ell_tilde_r: ||A^{-1}||");
  if (!(kappa >= 1.0 - 1e-9)) throw ParameterError("ell_tilde_r: kappa must be at least 1");
  EllTildeResult out;
  out.beta = 1.0 / (24.0 * std::max(kappa, 1.0) + 1.0);
  out.gamma_r = gamma_r(r);
  const double g = -std::log1p(-out.beta);
  // log f(k) = r log(1+k) - g k is concave with its real maximum at k = r/g - 1
  const double kstar = std::max(0.0, r / g - 1.0);
  double best = -kInf;
  for (double k : {std::floor(kstar), std::ceil(kstar)}) {
    const double lf = r * std::log1p(k) - g * k;
    if (lf > best) {
      best = lf;
      out.argmax_k = static_cast<long long>(k);
    }
  }
  out.log_sup = best;
  out.log_value = std::log(out.gamma_r) + std::log(norm_Ainv_op) + best;
  out.value = std::exp(out.log_value);
  return out;
}

// ---------------------------------------------------------------- Phi_{A,r}

struct PhiResult {
  long long value = 0;
  long long k_first = 0;   ///< minimal k for 2 3^r k^{-r} ||A||_{C_r} l_r <= t
  long long k_second = 0;  ///< minimal k for 2 E_k(A) ||A^{-1}|| <= t
  bool first_dominates = true;
};

/// Phi_{A,r}(t) = min{k >= 1 : max(2 3^r k^{-r} ||A||_{C_r} l_r, 2 E_k ||A^{-1}||) <= t}.
/// Both criteria are nonincreasing in k: the first is solved in closed form,
/// the second by doubling then bisection.
inline PhiResult phi_Ar(double norm_A_Cr, double log_ell_r, double norm_Ainv_op, double r, double t,
                        const std::function<double(long long)>& banded_err, long long cap = 1'000'000'000'000'000LL) {
  if (!(t > 0.0 && t <= 0.5)) throw ParameterError("phi_Ar: t must lie in (0, 1/2]");
  if (!(r > 0.0)) throw ParameterError("phi_Ar: r must be positive");
  PhiResult out;
  const double lc = std::log(2.0) + r * std::log(3.0) + std::log(norm_A_Cr) + log_ell_r - std::log(t);
  auto first_ok = [&](long long k) { return lc - r * std::log(static_cast<double>(k)) <= 0.0; };
  const double kreal = std::exp(lc / r);
  if (!(kreal < static_cast<double>(cap)))
    throw ScanCapError("phi_Ar: first criterion needs k ~ " + std::to_string(kreal), cap);
  long long k1 = std::max(1LL, static_cast<long long>(std::ceil(kreal)));
  while (k1 > 1 && first_ok(k1 - 1)) --k1;
  while (!first_ok(k1)) ++k1;
  out.k_first = k1;

  auto second_ok = [&](long long k) { return 2.0 * banded_err(k) * norm_Ainv_op <= t; };
  long long hi = 1;
  while (!second_ok(hi)) {
    if (hi > cap / 2) throw ScanCapError("phi_Ar: banded error does not fall below t", cap);
    hi *= 2;
  }
  long long lo = hi / 2;  // fails (or is 0)
  while (hi - lo > 1) {
    const long long mid = lo + (hi - lo) / 2;
    if (second_ok(mid)) hi = mid;
    else lo = mid;
  }
  out.k_second = hi;
  out.value = std::max(out.k_first, out.k_second);
  out.first_dominates = out.k_first >= out.k_second;
  return out;
}

inline PhiResult phi_Ar(const LatticeMatrix& a, double r, double t) {
  const SpectralData sd = spectral_data(a);
  const EllResult l = ell_r(sd.norm_Ainv_op, sd.kappa, r);
  return phi_Ar(cv_norm(a, Weight::polynomial(r)), l.log_value, sd.norm_Ainv_op, r, t,
                [&](long long k) { return banded_error(a, static_cast<long>(std::min<long long>(k, 1L << 40))); });
}

// ---------------------------------------------------------------- Baskakov

/// ||A^{-1}||_{C_r} <= 4 l_r Phi (1 + Phi)^r, Phi = Phi_{A,r}(t), minimized over
/// t in {1/2} and the optional grid.
inline BoundReport baskakov_bound_Cr(const LatticeMatrix& a, double r, const std::vector<double>& t_grid = {}) {
  if (!(r > 0.0)) throw ParameterError("baskakov_bound_Cr: r must be positive");
  BoundReport rep;
  rep.bound_name = "baskakov_Cr";
  const SpectralData sd = spectral_data(a);
  const double ncr = cv_norm(a, Weight::polynomial(r));
  const EllResult l = ell_r(sd.norm_Ainv_op, sd.kappa, r);
  rep.inputs = {ncr, sd.norm_A_op, sd.norm_Ainv_op, r, {}};
  rep.intermediates["kappa"] = sd.kappa;
  rep.intermediates["beta"] = l.beta;
  rep.intermediates["ell_r"] = l.value;
  rep.intermediates["log_ell_r"] = l.log_value;

  std::vector<double> ts{0.5};
  ts.insert(ts.end(), t_grid.begin(), t_grid.end());
  double best = kInf;
  auto eb = [&](long long k) { return banded_error(a, static_cast<long>(std::min<long long>(k, 1L << 40))); };
  for (double t : ts) {
    const PhiResult phi = phi_Ar(ncr, l.log_value, sd.norm_Ainv_op, r, t, eb);
    const double ph = static_cast<double>(phi.value);
    const double lb = std::log(4.0) + l.log_value + std::log(ph) + r * std::log1p(ph);
    if (lb < best) {
      best = lb;
      rep.intermediates["Phi"] = ph;
      rep.intermediates["t"] = t;
    }
  }
  rep.set_log_bound(best);
  rep.rate_exponent = kNaN;
  const MeasuredInverse inv = measured_inverse(a);
  rep.set_measured(cv_norm(inv.inverse, Weight::polynomial(r)));
  return rep;
}

/// ||A^{-1}||_{J_r} <= 4 l~_r (2 + (2 3^r ||A||_{J_r} l~_r)^{1/(r-1)})^r from scalar inputs.
inline BoundReport baskakov_bound_Jr(double nj, const SpectralData& sd, double r) {
  if (!(r > 1.0)) throw ParameterError("baskakov_bound_Jr: r must exceed 1");
  detail::require_positive(nj, "baskakov_bound_Jr: ||A||_{J_r}");
  BoundReport rep;
  rep.bound_name = "baskakov_Jr";
  const EllTildeResult lt = ell_tilde_r(sd.norm_Ainv_op, sd.kappa, r);
  rep.inputs = {nj, sd.norm_A_op, sd.norm_Ainv_op, r, {}};
  rep.intermediates["kappa"] = sd.kappa;
  rep.intermediates["beta"] = lt.beta;
  rep.intermediates["gamma_r"] = lt.gamma_r;
  rep.intermediates["ell_tilde_r"] = lt.value;
  const double lx = (std::log(2.0) + r * std::log(3.0) + std::log(nj) + lt.log_value) / (r - 1.0);
  rep.intermediates["log_inner"] = lx;
  rep.set_log_bound(std::log(4.0) + lt.log_value + r * detail::log_add(std::log(2.0), lx));
  return rep;
}

inline BoundReport baskakov_bound_Jr(const LatticeMatrix& a, double r) {
  if (!(r > 1.0)) throw ParameterError("baskakov_bound_Jr: r must exceed 1");
  BoundReport rep = baskakov_bound_Jr(jaffard_norm(a, r), spectral_data(a), r);
  const MeasuredInverse inv = measured_inverse(a);
  rep.set_measured(jaffard_norm(inv.inverse, r));
  return rep;
}

// ---------------------------------------------------------------- explicit forms

enum class ConstantMode { symbolic, numeric };

inline double log_constant_Cr_numeric(double r) {
  if (!(r > 0.0)) throw ParameterError("constant_Cr_numeric: r must be positive");
  return std::log(128.0) + r * std::log(50.0) + std::log(64.0) / r + (1.0 + 1.0 / r) * std::lgamma(r + 1.0);
}

/// C_r = 128 50^r 64^{1/r} Gamma(r+1)^{1+1/r}.
inline double constant_Cr_numeric(double r) {
  const double lg = log_constant_Cr_numeric(r);
  if (!(lg < std::log(std::numeric_limits<double>::max())))
    throw RangeError("constant_Cr_numeric: value exceeds double range", lg);
  return 128.0 * std::pow(50.0, r) * std::pow(64.0, 1.0 / r) * std::pow(std::tgamma(r + 1.0), 1.0 + 1.0 / r);
}

/// Constant of the two-norm J_r form, composed from l~_r <= c7 ||A||^r ||A^{-1}||^{r+1}
/// with c7 = gamma_r (25/24) (25 r / e)^r and 2 + X <= 2X for the Baskakov inner term:
/// C~_r = 4 2^r (2 3^r)^{r/(r-1)} c7^{(2r-1)/(r-1)}.
inline double log_constant_Jr_numeric(double r) {
  if (!(r > 1.0)) throw ParameterError("constant_Jr_numeric: r must exceed 1");
  const double lc7 = std::log(gamma_r(r)) + std::log(25.0 / 24.0) + r * (std::log(25.0 * r) - 1.0);
  return std::log(4.0) + r * std::log(2.0) + r / (r - 1.0) * (std::log(2.0) + r * std::log(3.0)) +
         (2.0 * r - 1.0) / (r - 1.0) * lc7;
}

/// C_r ||A||_{C_r}^{1+1/r} ||A||^{2r+3+1/r} ||A^{-1}||^{2r+2/r+5}.
inline BoundReport explicit_bound_Cr(double norm_A_Cr, double norm_A_op, double norm_Ainv_op, double r,
                                     ConstantMode mode = ConstantMode::numeric) {
  if (!(r > 0.0)) throw ParameterError("explicit_bound_Cr: r must be positive");
  detail::require_positive(norm_A_Cr, "explicit_bound_Cr: ||A||_{C_r}");
  detail::require_positive(norm_A_op, "explicit_bound_Cr: ||A||");
  detail::require_positive(norm_Ainv_op, "explicit_bound_Cr: ||A^{-1}||");
  if (!(norm_A_op * norm_Ainv_op >= 1.0 - 1e-9)) throw ParameterError("explicit_bound_Cr: ||A|| ||A^{-1}|| < 1");
  BoundReport rep;
  rep.bound_name = "explicit_Cr";
  rep.inputs = {norm_A_Cr, norm_A_op, norm_Ainv_op, r, {}};
  const double e_alg = 1.0 + 1.0 / r;
  const double e_op = 2.0 * r + 3.0 + 1.0 / r;
  const double e_inv = 2.0 * r + 2.0 / r + 5.0;
  const double lC = mode == ConstantMode::numeric ? log_constant_Cr_numeric(r) : 0.0;
  rep.symbolic_constant = mode == ConstantMode::symbolic;
  rep.intermediates["log_C_r"] = lC;
  rep.intermediates["exponent_alg"] = e_alg;
  rep.intermediates["exponent_op"] = e_op;
  rep.intermediates["exponent_inv"] = e_inv;
  const double la = std::log(norm_A_Cr), lo = std::log(norm_A_op), li = std::log(norm_Ainv_op);
  rep.intermediates["log_simplified"] = lC + (e_alg + e_op) * la + e_inv * li;
  rep.intermediates["log_stated_op_form"] = lC + e_alg * la + (2.0 * r + 2.0 / r + 3.0) * lo + e_inv * li;
  rep.rate_exponent = e_inv;
  rep.set_log_bound(lC + e_alg * la + e_op * lo + e_inv * li);
  return rep;
}

/// C~_r ||A||_{J_r}^{r/(r-1)} ||A||^{2r+1+1/(r-1)} ||A^{-1}||^{2r+3+2/(r-1)}, and the
/// single-constant form C~_r (2 zeta(r) - 1)^{2r+1+1/(r-1)} C^{2r+2+2/(r-1)} ||A^{-1}||^{...}
/// using ||A|| <= (2 zeta(r) - 1) ||A||_{J_r}.
inline BoundReport explicit_bound_Jr(double norm_A_Jr, double norm_A_op, double norm_Ainv_op, double r,
                                     ConstantMode mode = ConstantMode::numeric) {
  if (!(r > 1.0)) throw ParameterError("explicit_bound_Jr: r must exceed 1");
  detail::require_positive(norm_A_Jr, "explicit_bound_Jr: ||A||_{J_r}");
  detail::require_positive(norm_A_op, "explicit_bound_Jr: ||A||");
  detail::require_positive(norm_Ainv_op, "explicit_bound_Jr: ||A^{-1}||");
  BoundReport rep;
  rep.bound_name = "explicit_Jr";
  rep.inputs = {norm_A_Jr, norm_A_op, norm_Ainv_op, r, {}};
  const double e_alg = r / (r - 1.0);
  const double e_op = 2.0 * r + 1.0 + 1.0 / (r - 1.0);
  const double e_inv = 2.0 * r + 3.0 + 2.0 / (r - 1.0);
  const double lC = mode == ConstantMode::numeric ? log_constant_Jr_numeric(r) : 0.0;
  rep.symbolic_constant = mode == ConstantMode::symbolic;
  const double schur = 2.0 * boost::math::zeta(r) - 1.0;
  rep.intermediates["log_C_r"] = lC;
  rep.intermediates["schur_constant"] = schur;
  rep.intermediates["exponent_alg"] = e_alg;
  rep.intermediates["exponent_op"] = e_op;
  rep.intermediates["exponent_inv"] = e_inv;
  const double la = std::log(norm_A_Jr), lo = std::log(norm_A_op), li = std::log(norm_Ainv_op);
  rep.intermediates["log_single_constant_form"] = lC + e_op * std::log(schur) + (e_alg + e_op) * la + e_inv * li;
  rep.rate_exponent = e_inv;
  rep.set_log_bound(lC + e_alg * la + e_op * lo + e_inv * li);
  return rep;
}

// ---------------------------------------------------------------- smooth subalgebras

/// |a^{-1}|_{D(D^k)} <= ||a^{-1}||^2 |a| max(k, (q^k - 1)/(q - 1)), q = ||a^{-1}|| |a|.
inline BoundReport dd_domain_bound(double norm_Ainv, double seminorm_a, int k) {
  if (k < 1) throw ParameterError("dd_domain_bound: k must be positive");
  detail::require_positive(norm_Ainv, "dd_domain_bound: ||a^{-1}||");
  detail::require_positive(seminorm_a, "dd_domain_bound: |a|");
  BoundReport rep;
  rep.bound_name = "dd_domain";
  rep.inputs = {seminorm_a, kNaN, norm_Ainv, static_cast<double>(k), {}};
  const double q = norm_Ainv * seminorm_a;
  const double lf = std::max(std::log(static_cast<double>(k)), detail::log_geometric_factor(q, k));
  rep.intermediates["q"] = q;
  rep.intermediates["log_factor"] = lf;
  const double ls = std::log(2.0) + (k + 1.0) * std::log(norm_Ainv) + k * std::log(seminorm_a);
  rep.intermediates["log_simplified"] = ls;
  rep.intermediates["simplified_applies"] = q > std::max(2.0, static_cast<double>(k)) ? 1.0 : 0.0;
  rep.rate_exponent = k + 1.0;
  rep.set_log_bound(2.0 * std::log(norm_Ainv) + std::log(seminorm_a) + lf);
  return rep;
}

/// C ||a^{-1}||^2 ||a||_Lambda (q^{k} - 1)/(q - 1), k = floor(r) + 1, q = ||a^{-1}|| ||a||_Lambda.
/// Without a calibrated C the report is a rate.
inline BoundReport besov_bound(double norm_Ainv, double norm_a_besov, double r, double p,
                               std::optional<double> constant = std::nullopt) {
  if (!(r > 0.0)) throw ParameterError("besov_bound: r must be positive");
  if (!(p >= 1.0)) throw ParameterError("besov_bound: p must be at least 1");
  detail::require_positive(norm_Ainv, "besov_bound: ||a^{-1}||");
  detail::require_positive(norm_a_besov, "besov_bound: ||a||_Lambda");
  BoundReport rep;
  rep.bound_name = "besov";
  rep.inputs = {norm_a_besov, kNaN, norm_Ainv, r, {{"p", p}}};
  const int k = static_cast<int>(std::floor(r)) + 1;
  const double q = norm_Ainv * norm_a_besov;
  const double lC = constant ? std::log(*constant) : 0.0;
  rep.symbolic_constant = !constant;
  rep.intermediates["k"] = k;
  rep.intermediates["q"] = q;
  rep.intermediates["log_asymptotic"] = lC + (k + 1.0) * std::log(norm_Ainv);
  rep.rate_exponent = k + 1.0;
  rep.set_log_bound(lC + 2.0 * std::log(norm_Ainv) + std::log(norm_a_besov) + detail::log_geometric_factor(q, k));
  return rep;
}

/// First-order rule |a^{-1}|_Lambda <= M ||a^{-1}||^2 |a|_Lambda (k = 1, r < 1); M = 1 for
/// isometric automorphism groups.
inline BoundReport besov_first_order_bound(double norm_Ainv, double seminorm_a, double m_psi = 1.0) {
  detail::require_positive(norm_Ainv, "besov_first_order_bound: ||a^{-1}||");
  if (!(seminorm_a >= 0.0)) throw ParameterError("besov_first_order_bound: seminorm must be nonnegative");
  BoundReport rep;
  rep.bound_name = "besov_first_order";
  rep.inputs = {seminorm_a, kNaN, norm_Ainv, kNaN, {{"M_psi", m_psi}}};
  rep.rate_exponent = 2.0;
  rep.set_log_bound(seminorm_a > 0.0 ? std::log(m_psi) + 2.0 * std::log(norm_Ainv) + std::log(seminorm_a) : -kInf);
  return rep;
}

/// Rate-only reiteration bound ||a^{-1}||^{2^{floor r + 1}} ||a||^{2^{floor r}}.
inline BoundReport besov_basic_bound(double norm_Ainv, double norm_a_besov, double r) {
  if (!(r > 0.0)) throw ParameterError("besov_basic_bound: r must be positive");
  detail::require_positive(norm_Ainv, "besov_basic_bound: ||a^{-1}||");
  detail::require_positive(norm_a_besov, "besov_basic_bound: ||a||_Lambda");
  BoundReport rep;
  rep.bound_name = "besov_basic";
  rep.inputs = {norm_a_besov, kNaN, norm_Ainv, r, {}};
  rep.symbolic_constant = true;
  const double f = std::floor(r);
  rep.rate_exponent = std::pow(2.0, f + 1.0);
  rep.set_log_bound(rep.rate_exponent * std::log(norm_Ainv) + std::pow(2.0, f) * std::log(norm_a_besov));
  return rep;
}

/// Rate-only Bessel potential bound C_r ||a^{-1}||^3 ||a||_{P_r}^2, 0 < r < 1.
inline BoundReport bessel_bound(double norm_Ainv, double norm_a_bessel, double r) {
  if (!(r > 0.0 && r < 1.0)) throw ParameterError("bessel_bound: r must lie in (0, 1)");
  detail::require_positive(norm_Ainv, "bessel_bound: ||a^{-1}||");
  detail::require_positive(norm_a_bessel, "bessel_bound: ||a||_P");
  BoundReport rep;
  rep.bound_name = "bessel";
  rep.inputs = {norm_a_bessel, kNaN, norm_Ainv, r, {}};
  rep.symbolic_constant = true;
  rep.rate_exponent = 3.0;
  rep.set_log_bound(3.0 * std::log(norm_Ainv) + 2.0 * std::log(norm_a_bessel));
  return rep;
}

// ---------------------------------------------------------------- Dales-Davie

/// General sequence: delta^{-1} + sum_m delta^{-m-1} A_m^m. The sum is taken
/// past m_delta (last m with A_m >= delta/2) until the remaining terms, each
/// at most delta^{-1} 2^{-m}, are negligible; that tail bound is added.
inline BoundReport dales_davie_bound(double delta, const std::function<double(int)>& a_m, int m_max = 5000) {
  if (!(delta > 0.0 && delta <= 1.0)) throw ParameterError("dales_davie_bound: delta must lie in (0, 1]");
  BoundReport rep;
  rep.bound_name = "dales_davie";
  rep.inputs = {1.0, kNaN, 1.0 / delta, kNaN, {}};
  const double ld = std::log(delta);
  LogSum acc;
  acc.add_log(-ld);
  int m_delta = 0;
  bool below = false;
  double prev = kInf;
  int m = 1;
  for (; m <= m_max; ++m) {
    const double am = a_m(m);
    if (!(am >= 0.0) || am > prev * (1.0 + 1e-12)) {
      rep.inconclusive = true;  // A_m must be nonincreasing for the tail argument
      break;
    }
    prev = am;
    rep.a_m.push_back(am);
    if (am >= 0.5 * delta) {
      m_delta = m;
      below = false;
    } else {
      below = true;
    }
    acc.add_log(am > 0.0 ? -(m + 1.0) * ld + m * std::log(am) : -kInf);
    // remaining terms are <= delta^{-1} 2^{-j} once A_j < delta/2
    if (below && -ld - m * std::log(2.0) < acc.log() + std::log(1e-17)) break;
  }
  if (m > m_max) rep.inconclusive = true;
  rep.intermediates["m_delta"] = m_delta;
  rep.intermediates["terms"] = static_cast<double>(rep.a_m.size());
  if (delta <= 0.5) rep.intermediates["log_crude"] = std::log(4.0) - m_delta * ld;
  if (rep.inconclusive) {
    rep.intermediates["log_partial_sum"] = acc.log();
    rep.set_log_bound(kInf);
    return rep;
  }
  const double log_tail = -ld - m * std::log(2.0);
  rep.intermediates["log_tail"] = log_tail;
  rep.set_log_bound(detail::log_add(acc.log(), log_tail));
  return rep;
}

/// log phi_s(x), switching to the leading asymptotics
/// phi_s(x) ~ (2 pi)^{(1-s)/2} s^{-1/2} x^{(1-s)/(2s)} e^{s x^{1/s}} beyond the summable range.
inline double log_phi_extended(double s, double x, bool* asymptotic = nullptr) {
  if (asymptotic) *asymptotic = false;
  try {
    return log_phi(s, x);
  } catch (const RangeError&) {
    if (asymptotic) *asymptotic = true;
    const double lx = std::log(x);
    return 0.5 * (1.0 - s) * std::log(2.0 * std::numbers::pi) - 0.5 * std::log(s) + (1.0 - s) / (2.0 * s) * lx +
           s * std::exp(lx / s);
  }
}

/// Gevrey sequence M_k = k!^r, r > 1: delta^{-1} v_{r-1}(delta^{-1}).
inline BoundReport dales_davie_bound_gevrey(double delta, double r) {
  if (!(delta > 0.0 && delta <= 1.0)) throw ParameterError("dales_davie_bound_gevrey: delta must lie in (0, 1]");
  if (!(r > 1.0)) throw ParameterError("dales_davie_bound_gevrey: r must exceed 1");
  BoundReport rep;
  rep.bound_name = "dales_davie_gevrey";
  rep.inputs = {1.0, kNaN, 1.0 / delta, r, {}};
  bool asym = false;
  const double lv = log_phi_extended(r - 1.0, 1.0 / delta, &asym);
  rep.intermediates["log_v"] = lv;
  rep.intermediates["asymptotic_phi"] = asym ? 1.0 : 0.0;
  rep.set_log_bound(-std::log(delta) + lv);
  return rep;
}

/// ||A^{-1}||_{C_{v_r}} <= C0 delta^{-e} v_{r-1}(C1 delta^{-e}), e = 2s + 2/s + 5, composed
/// from the explicit C_s bound (C0 = C1 = C_s) and the Gevrey Dales-Davie bound.
inline BoundReport superpoly_bound(double delta, double r, double s = 1.0) {
  if (!(delta > 0.0 && delta <= 1.0)) throw ParameterError("superpoly_bound: delta must lie in (0, 1]");
  if (!(r > 1.0)) throw ParameterError("superpoly_bound: r must exceed 1");
  if (!(s > 0.0)) throw ParameterError("superpoly_bound: s must be positive");
  const BoundReport layer1 = explicit_bound_Cr(1.0, 1.0, 1.0 / delta, s, ConstantMode::numeric);
  BoundReport rep;
  rep.bound_name = "superpoly";
  rep.inputs = {1.0, 1.0, 1.0 / delta, r, {{"s", s}}};
  const double lx = layer1.log_bound;  // log(1/eps)
  bool asym = false;
  const double lv = log_phi_extended(r - 1.0, std::exp(lx), &asym);
  rep.intermediates["exponent"] = 2.0 * s + 2.0 / s + 5.0;
  rep.intermediates["log_C0"] = layer1.intermediates.at("log_C_r");
  rep.intermediates["log_C1"] = layer1.intermediates.at("log_C_r");
  rep.intermediates["log_layer1"] = lx;
  rep.intermediates["log_v"] = lv;
  rep.intermediates["asymptotic_phi"] = asym ? 1.0 : 0.0;
  rep.rate_exponent = rep.intermediates["exponent"];
  rep.set_log_bound(lx + lv);
  return rep;
}

// ---------------------------------------------------------------- calibration

struct Calibration {
  double constant = kNaN;  ///< max measured / rate: the smallest admissible C
  std::vector<double> ratios;
  double min_ratio = kNaN;
  double max_ratio = kNaN;
  bool stable = false;  ///< finite, positive and max/min <= spread
};

inline Calibration calibrate_constant(const std::vector<double>& measured, const std::vector<double>& rates,
                                      double spread = 10.0) {
  if (measured.size() != rates.size() || measured.empty())
    throw ParameterError("calibrate_constant: need equally many measurements and rates");
  Calibration c;
  for (std::size_t i = 0; i < measured.size(); ++i) c.ratios.push_back(measured[i] / rates[i]);
  const auto [mn, mx] = std::minmax_element(c.ratios.begin(), c.ratios.end());
  c.min_ratio = *mn;
  c.max_ratio = *mx;
  c.constant = *mx;
  c.stable = std::isfinite(*mx) && *mn > 0.0 && *mx / *mn <= spread;
  return c;
}

}  // namespace decayinv
