#pragma once

// Scalar helpers shared by the norm, bound and experiment layers: log-domain
// accumulation of positive series, the entire function phi_s(x) = sum x^l / l!^s,
// and exact unit phases e^{2 pi i x}.

#include <charconv>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>

#include "decayinv/errors.hpp"

namespace decayinv {

using cplx = std::complex<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// e^{2 pi i x}. Exact at multiples of 1/4 so that period and quarter-turn
/// identities hold bit-for-bit.
inline cplx unit_phase(double x) {
  double frac = x - std::round(x);
  const double q = 4.0 * frac;
  if (q == std::round(q)) {
    switch (static_cast<int>(std::lround(q))) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case -1: return {0.0, -1.0};
      default: return {-1.0, 0.0};  // +-2
    }
  }
  const double a = 2.0 * std::numbers::pi * frac;
  return {std::cos(a), std::sin(a)};
}

/// Integer power with 0^0 = 1.
inline double ipow(double base, int e) {
  double out = 1.0;
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

inline double log_factorial(double n) { return std::lgamma(n + 1.0); }

/// Shortest decimal text that parses back to the same double.
inline std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

/// Running sum of positive terms supplied as logarithms. Rescales so that
/// arbitrarily large sums stay representable; uses Neumaier compensation.
class LogSum {
 public:
  void add_log(double log_term) {
    if (log_term == -kInf) return;
    if (ref_ == -kInf) {
      ref_ = log_term;
      sum_ = 1.0;
      comp_ = 0.0;
      return;
    }
    if (log_term > ref_ + 300.0) {
      const double s = std::exp(ref_ - log_term);
      sum_ *= s;
      comp_ *= s;
      ref_ = log_term;
    }
    add_scaled(std::exp(log_term - ref_));
  }

  double log() const {
    if (ref_ == -kInf) return -kInf;
    return ref_ + std::log(sum_ + comp_);
  }
  double value() const { return std::exp(log()); }
  bool empty() const { return ref_ == -kInf; }

 private:
  void add_scaled(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }

  double ref_ = -kInf;
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct SeriesResult {
  double log_value = -kInf;
  double rel_tail = 0.0;  ///< bound on omitted mass relative to the sum
  long long terms = 0;
  bool converged = true;

  double value() const { return std::exp(log_value); }
  double tail() const { return value() * rel_tail; }
};

/// Sums sum_{k >= k0} exp(log_term(k)) for a series whose consecutive-term
/// ratios are eventually nonincreasing and below one (log-concave tails:
/// polynomial or subexponential weights times geometric decay). Stops once
/// the geometric tail bound term * rho / (1 - rho) drops below rel_tol * sum.
template <class LogTerm>
SeriesResult sum_log_series(LogTerm&& log_term, long long k0 = 0, double rel_tol = 1e-16,
                            long long max_terms = 200'000'000) {
  LogSum acc;
  SeriesResult out;
  double prev = -kInf;
  double prev_ratio = kInf;
  for (long long k = k0; k - k0 < max_terms; ++k) {
    const double lt = log_term(k);
    acc.add_log(lt);
    ++out.terms;
    if (lt != -kInf && prev != -kInf) {
      const double log_ratio = lt - prev;
      const double ratio = std::exp(log_ratio);
      if (ratio < 1.0 && ratio <= prev_ratio * (1.0 + 1e-12)) {
        const double log_tail = lt + std::log(ratio) - std::log1p(-ratio);
        const double rel = std::exp(log_tail - acc.log());
        if (rel <= rel_tol) {
          out.log_value = acc.log();
          out.rel_tail = rel;
          return out;
        }
      }
      prev_ratio = ratio;
    }
    prev = lt;
  }
  out.log_value = acc.log();
  out.rel_tail = kInf;
  out.converged = false;
  return out;
}

/// log phi_s(x) where phi_s(x) = sum_{l >= 0} x^l / l!^s, x >= 0, s > 0.
/// Sums outward from the peak term l* ~ x^{1/s}, so cost grows like
/// sqrt(l*) rather than l*.
inline double log_phi(double s, double x) {
  if (!(s > 0.0)) throw ParameterError("log_phi: order parameter must be positive");
  if (!(x >= 0.0)) throw ParameterError("log_phi: argument must be nonnegative");
  if (x == 0.0) return 0.0;
  const double peak_real = std::exp(std::log(x) / s);
  if (peak_real > 1e12)
    throw RangeError("log_phi: peak index beyond summable range", kInf);
  const long long peak = std::max(0LL, static_cast<long long>(std::floor(peak_real)) - 1);
  const double lx = std::log(x);
  const double lpeak = static_cast<double>(peak) * lx - s * log_factorial(static_cast<double>(peak));

  LogSum acc;
  acc.add_log(lpeak);
  constexpr double kCut = -41.5;  // e^-41.5 ~ 1e-18 relative to the peak
  // upward
  double lt = lpeak;
  for (long long l = peak + 1;; ++l) {
    lt += lx - s * std::log(static_cast<double>(l));
    acc.add_log(lt);
    const double log_ratio = lx - s * std::log(static_cast<double>(l + 1));
    if (log_ratio < 0.0 && lt - lpeak < kCut) {
      const double ratio = std::exp(log_ratio);
      if (lt + log_ratio - std::log1p(-ratio) - acc.log() < kCut) break;
    }
  }
  // downward
  lt = lpeak;
  for (long long l = peak; l > 0; --l) {
    lt -= lx - s * std::log(static_cast<double>(l));
    acc.add_log(lt);
    if (lt - lpeak < kCut) {
      // remaining terms shrink at least geometrically with ratio l^s / x < 1
      const double log_ratio = s * std::log(static_cast<double>(l - 1 > 0 ? l - 1 : 1)) - lx;
      if (log_ratio < 0.0) {
        const double bound = lt + log_ratio - std::log1p(-std::exp(log_ratio)) + std::log(static_cast<double>(l));
        if (bound - acc.log() < kCut) break;
      }
    }
  }
  return acc.log();
}

}  // namespace decayinv
