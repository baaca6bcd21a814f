#pragma once

// Side-diagonal data d_A(m) and the algebra norms built from it: Jaffard
// J_r, convolution-dominated C_v, banded error E_k, derivation-domain and
// Dales-Davie norms, and the quantity A_m of a smoothness sequence.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "decayinv/compositions.hpp"
#include "decayinv/errors.hpp"
#include "decayinv/lattice_matrix.hpp"
#include "decayinv/numerics.hpp"
#include "decayinv/weights.hpp"

namespace decayinv {

/// d(m) for every offset m. Either finitely supported, or the closed form of
/// a geometric family (then d(direction * j) = |scale| j^order e^{-gamma j}).
struct DiagonalProfile {
  std::map<long, double> finite;
  std::optional<GeometricSeries> closed_form;

  double log_d(long m) const {
    if (closed_form) return closed_form->log_magnitude(m * closed_form->direction);
    auto it = finite.find(m);
    return (it == finite.end() || it->second == 0.0) ? -kInf : std::log(it->second);
  }
  double d(long m) const { return std::exp(log_d(m)); }

  /// Profile of D^k(A): d(m) -> |m|^k d(m).
  DiagonalProfile derivation(int k) const {
    DiagonalProfile out = *this;
    if (closed_form) {
      out.closed_form->derivative_order += k;
      out.finite.clear();
      return out;
    }
    for (auto& [m, v] : out.finite) v *= ipow(static_cast<double>(m < 0 ? -m : m), k);
    std::erase_if(out.finite, [](const auto& kv) { return kv.second == 0.0; });
    return out;
  }
};

inline DiagonalProfile diagonal_profile(const LatticeMatrix& a) {
  DiagonalProfile p;
  if (const ToeplitzSymbol* s = a.symbol()) {
    if (s->closed_form()) {
      p.closed_form = s->closed_form();
      return p;
    }
    for (const auto& [m, c] : s->coefficients()) p.finite[m] = std::abs(c);
    return p;
  }
  const long n = a.size();
  std::vector<double> d(static_cast<std::size_t>(2 * n - 1), 0.0);
  const CMatrix& e = a.entries();
  for (long j = 0; j < n; ++j)
    for (long i = 0; i < n; ++i) {
      double& slot = d[static_cast<std::size_t>(i - j + n - 1)];
      slot = std::max(slot, std::abs(e(i, j)));
    }
  for (long m = -(n - 1); m <= n - 1; ++m)
    if (d[static_cast<std::size_t>(m + n - 1)] > 0.0) p.finite[m] = d[static_cast<std::size_t>(m + n - 1)];
  return p;
}

/// d_A(k): supremum of the k-th side diagonal.
inline double side_diag_sup(const LatticeMatrix& a, long k) {
  if (const ToeplitzSymbol* s = a.symbol()) {
    if (const auto& cf = s->closed_form()) return std::exp(cf->log_magnitude(k * cf->direction));
    return std::abs((*s)(k));
  }
  const long n = a.size();
  if (k >= n || k <= -n) return 0.0;
  double best = 0.0;
  for (long i = std::max(0L, k); i < std::min(n, n + k); ++i) best = std::max(best, std::abs(a.entries()(i, i - k)));
  return best;
}

struct WeightedSum {
  double value = 0.0;
  double tail = 0.0;  ///< bound on omitted mass (closed forms only)
  long long terms = 0;
  bool converged = true;
};

/// sum_{|m| >= from} d(m) v(m).
inline WeightedSum weighted_sum(const DiagonalProfile& p, const Weight& v, long from = 0,
                                long long max_terms = 50'000'000) {
  WeightedSum out;
  if (p.closed_form) {
    const GeometricSeries& g = *p.closed_form;
    const long start = std::max<long>(from, g.derivative_order > 0 ? 1 : 0);
    auto lt = [&](long long j) {
      return g.log_magnitude(static_cast<long>(j)) + v.log_value(static_cast<long>(j) * g.direction);
    };
    SeriesResult s = sum_log_series(lt, start, 1e-16, max_terms);
    out.value = s.value();
    out.tail = s.converged ? s.tail() : kInf;
    out.terms = s.terms;
    out.converged = s.converged;
    return out;
  }
  double sum = 0.0, comp = 0.0;
  for (const auto& [m, d] : p.finite) {
    if ((m < 0 ? -m : m) < from) continue;
    const double x = d * v(m);
    const double t = sum + x;
    comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
    ++out.terms;
  }
  out.value = sum + comp;
  return out;
}

/// max_m d(m) v(m) for weights that are eventually dominated by the decay.
inline std::pair<double, long> weighted_sup(const DiagonalProfile& p, const Weight& v) {
  if (p.closed_form) {
    const GeometricSeries& g = *p.closed_form;
    double best = -kInf;
    long arg = 0;
    for (long j = 0;; ++j) {
      const double lt = g.log_magnitude(j) + v.log_value(j * g.direction);
      if (lt > best) {
        best = lt;
        arg = j;
      }
      // log d(j) v(j) is eventually concave; stop well past the peak
      if (j > arg + 16 && lt < best - 50.0) break;
      if (j > 100'000'000) throw NumericalError("weighted_sup: scan did not terminate", std::exp(best));
    }
    return {std::exp(best), arg * g.direction};
  }
  double best = 0.0;
  long arg = 0;
  for (const auto& [m, d] : p.finite) {
    const double x = d * v(m);
    if (x > best) {
      best = x;
      arg = m;
    }
  }
  return {best, arg};
}

/// ||A||_{J_r} = max_m d_A(m) (1 + |m|)^r.
inline double jaffard_norm(const LatticeMatrix& a, double r) {
  if (!(r > 0.0)) throw ParameterError("jaffard_norm: r must be positive");
  return weighted_sup(diagonal_profile(a), Weight::polynomial(r)).first;
}

/// ||A||_{C_v} = sum_m d_A(m) v(m), with a tail bound for closed forms.
inline WeightedSum cv_norm_report(const LatticeMatrix& a, const Weight& v) {
  return weighted_sum(diagonal_profile(a), v);
}
inline double cv_norm(const LatticeMatrix& a, const Weight& v) { return cv_norm_report(a, v).value; }

/// E_k(A) = sum_{|m| >= k+1} d_A(m) v(m).
inline double banded_error(const LatticeMatrix& a, long k, const Weight& v = Weight::constant_one()) {
  if (k < 0) throw ParameterError("banded_error: k must be nonnegative");
  if (auto b = a.bandwidth(); b && *b <= k) return 0.0;
  return weighted_sum(diagonal_profile(a), v, k + 1).value;
}

/// Norm on the ambient algebra B in which smoothness is measured.
struct Ambient {
  enum class Kind { C0, Jaffard, Operator };
  Kind kind = Kind::C0;
  double s = 0.0;

  static Ambient c0() { return {}; }
  static Ambient jaffard(double s) {
    if (!(s > 0.0)) throw ParameterError("Ambient::jaffard: s must be positive");
    return {Kind::Jaffard, s};
  }
  static Ambient op() { return {Kind::Operator, 0.0}; }

  std::string name() const {
    switch (kind) {
      case Kind::C0: return "C0";
      case Kind::Jaffard: return "J" + std::to_string(s);
      case Kind::Operator: return "operator";
    }
    return "?";
  }
};

inline double profile_norm(const DiagonalProfile& p, const Ambient& amb) {
  switch (amb.kind) {
    case Ambient::Kind::C0: return weighted_sum(p, Weight::constant_one()).value;
    case Ambient::Kind::Jaffard: return weighted_sup(p, Weight::polynomial(amb.s)).first;
    case Ambient::Kind::Operator: break;
  }
  throw ParameterError("profile_norm: operator norm needs the matrix");
}

/// ||A|| in the ambient algebra. The operator norm of a Toeplitz matrix is
/// the maximum modulus of its symbol on l^2(Z); otherwise the window section.
inline double ambient_norm(const LatticeMatrix& a, const Ambient& amb) {
  if (amb.kind != Ambient::Kind::Operator) return profile_norm(diagonal_profile(a), amb);
  if (const ToeplitzSymbol* s = a.symbol()) {
    const auto& cf = s->closed_form();
    if (!cf || cf->derivative_order == 0) return symbol_extrema(*s).max_modulus;
  }
  return operator_norm_l2(a);
}

/// ||D^k A|| in the ambient algebra.
inline double derivation_norm(const LatticeMatrix& a, int k, const Ambient& amb) {
  if (amb.kind != Ambient::Kind::Operator) return profile_norm(diagonal_profile(a).derivation(k), amb);
  return ambient_norm(derivation_power(a, k), amb);
}

/// |A|_{D(D^k)} = sum_{m=1}^{k} ||D^m A|| / m!.
inline double dd_seminorm(const LatticeMatrix& a, int k, const Ambient& amb = Ambient::c0()) {
  if (k < 1) throw ParameterError("dd_seminorm: k must be at least 1");
  double s = 0.0;
  double fact = 1.0;
  for (int m = 1; m <= k; ++m) {
    fact *= m;
    s += derivation_norm(a, m, amb) / fact;
  }
  return s;
}

struct DalesDavieNorm {
  double value = 0.0;        ///< exact value when available, else the partial sum
  double partial_sum = 0.0;  ///< sum_{k <= kmax} ||D^k A|| / M_k
  double tail_ratio = 0.0;   ///< last term / previous term of the partial sum
  bool divergent = false;
  bool exact = false;
};

/// sum_k ||D^k A|| / M_k. Over C_0 the series equals sum_m d(m) v_M(m)
/// with v_M(x) = sum_k x^k / M_k, which is summed exactly.
inline DalesDavieNorm dales_davie_norm(const LatticeMatrix& a, const SmoothnessSequence& M, int kmax,
                                       const Ambient& amb = Ambient::c0()) {
  if (kmax < 0) throw ParameterError("dales_davie_norm: kmax must be nonnegative");
  DalesDavieNorm out;
  const DiagonalProfile p = diagonal_profile(a);
  double prev = 0.0, last = 0.0;
  LogSum partial;
  for (int k = 0; k <= kmax; ++k) {
    const double lm = M.log_M(k);
    if (lm == kInf) {
      prev = last;
      last = 0.0;
      continue;
    }
    const double nk = amb.kind == Ambient::Kind::Operator ? derivation_norm(a, k, amb)
                                                           : profile_norm(p.derivation(k), amb);
    const double lt = nk > 0.0 ? std::log(nk) - lm : -kInf;
    partial.add_log(lt);
    prev = last;
    last = std::exp(lt);
  }
  out.partial_sum = partial.empty() ? 0.0 : partial.value();
  out.tail_ratio = prev > 0.0 ? last / prev : 0.0;
  out.value = out.partial_sum;
  out.divergent = out.tail_ratio >= 1.0;
  if (amb.kind == Ambient::Kind::C0 && M.kind() != SmoothnessSequence::Kind::custom) {
    out.exact = true;
    // e^{-gamma j} against v_M(j) ~ e^j: summable iff gamma > 1
    if (p.closed_form && M.kind() == SmoothnessSequence::Kind::analytic && !(p.closed_form->gamma > 1.0)) {
      out.divergent = true;
      out.value = kInf;
      return out;
    }
    const WeightedSum ws = weighted_sum(p, M.induced_weight(), 0, 10'000'000);
    out.divergent = !ws.converged;
    out.value = ws.converged ? ws.value : kInf;
  }
  return out;
}

struct WeightCheck {
  bool submultiplicative = true;
  double worst_ratio = 0.0;  ///< max v(k+l) / (v(k) v(l))
  std::vector<std::pair<long, double>> grs_trend;  ///< (k, v(k)^{1/k})
};

/// Submultiplicativity on |k|, |l| <= range and the GRS trend on k = 1, 2, 4, ...
inline WeightCheck check_weight(const Weight& v, long range) {
  if (range < 2) throw ParameterError("check_weight: range must be at least 2");
  WeightCheck out;
  double worst = -kInf;
  for (long k = -range; k <= range; ++k)
    for (long l = -range; l <= range; ++l) {
      const double lr = v.log_value(k + l) - v.log_value(k) - v.log_value(l);
      worst = std::max(worst, lr);
    }
  out.worst_ratio = std::exp(worst);
  out.submultiplicative = worst <= 1e-12;
  for (long k = 1; k <= range; k *= 2) out.grs_trend.emplace_back(k, std::exp(v.log_value(k) / static_cast<double>(k)));
  return out;
}

struct AmResult {
  double value = 0.0;
  double log_value = -kInf;
  int argmax_k = 0;
  Composition argmax;
  int kmax = 0;
};

/// A_m = (sup over k <= kmax and compositions k_1 + ... + k_m = k of
///        (k! / M_k) prod M_{k_j} / k_j!)^{1/m}.
inline AmResult a_m_bruteforce(const SmoothnessSequence& M, int m, int kmax = 15) {
  if (m < 1) throw ParameterError("a_m_bruteforce: m must be positive");
  if (kmax < m) throw ParameterError("a_m_bruteforce: kmax below m leaves no compositions");
  if (M.max_index() >= 0 && kmax > M.max_index())
    throw ParameterError("a_m_bruteforce: kmax exceeds the supplied sequence");
  AmResult out;
  out.kmax = kmax;
  std::vector<double> q(static_cast<std::size_t>(kmax + 1));
  for (int k = 0; k <= kmax; ++k) q[static_cast<std::size_t>(k)] = M.log_M(k) - log_factorial(k);
  double best = -kInf;
  for (int k = m; k <= kmax; ++k) {
    if (q[static_cast<std::size_t>(k)] == kInf) continue;
    for_each_composition(k, m, [&](const std::vector<int>& parts) {
      double s = -q[static_cast<std::size_t>(k)];
      for (int part : parts) s += q[static_cast<std::size_t>(part)];
      if (s > best) {
        best = s;
        out.argmax_k = k;
        out.argmax = Composition{parts};
      }
    });
  }
  out.log_value = best / m;
  out.value = std::exp(out.log_value);
  return out;
}

/// A_m = m!^{(1-r)/m} for the Gevrey sequence M_k = k!^r, r >= 1.
inline double a_m_gevrey(double r, int m) {
  if (!(r >= 1.0)) throw ParameterError("a_m_gevrey: r must be at least 1");
  if (m < 1) throw ParameterError("a_m_gevrey: m must be positive");
  return std::exp((1.0 - r) * log_factorial(m) / m);
}

struct PhiValue {
  double value = 0.0;
  double log_value = 0.0;
  double order_type_ratio = 0.0;  ///< log phi_r(x) / x^{1/r}, tends to r
};

/// phi_r(x) = sum_k x^k / k!^r.
inline PhiValue phi_r_eval(double r, double x, double tol = 1e-16) {
  if (!(tol > 0.0)) throw ParameterError("phi_r_eval: tol must be positive");
  PhiValue out;
  out.log_value = log_phi(r, x);
  out.order_type_ratio = x > 0.0 ? out.log_value / std::pow(x, 1.0 / r) : 0.0;
  if (out.log_value > std::log(std::numeric_limits<double>::max()))
    throw RangeError("phi_r_eval: value exceeds double range", out.log_value);
  out.value = std::exp(out.log_value);
  return out;
}

/// Convolution constant of J_r: 2^{r+1} (r+1) / (r-1).
inline double gamma_r(double r) {
  if (!(r > 1.0)) throw ParameterError("gamma_r: r must exceed 1");
  return std::pow(2.0, r + 1.0) * (r + 1.0) / (r - 1.0);
}

}  // namespace decayinv
