#pragma once

// Weights v on Z and Dales-Davie smoothness sequences (M_k).

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "decayinv/errors.hpp"
#include "decayinv/numerics.hpp"

namespace decayinv {

/// Weight function on Z:
///   polynomial(r):  v(k) = (1 + |k|)^r
///   subexp(r, L):   v(k) = sum_{l=0}^{L} |k|^l / l!^r   (L < 0: full series)
///   table:          v(k) read from a map; missing keys are an error
class Weight {
 public:
  enum class Kind { polynomial, subexp, table };

  static Weight polynomial(double r) {
    if (!(r >= 0.0) || !std::isfinite(r)) throw ParameterError("Weight::polynomial: r must be a finite value >= 0");
    Weight w;
    w.kind_ = Kind::polynomial;
    w.r_ = r;
    return w;
  }
  static Weight constant_one() { return polynomial(0.0); }
  static Weight subexp(double r, long truncation = -1) {
    if (!(r > 0.0) || !std::isfinite(r)) throw ParameterError("Weight::subexp: r must be positive");
    Weight w;
    w.kind_ = Kind::subexp;
    w.r_ = r;
    w.truncation_ = truncation;
    return w;
  }
  static Weight table(std::map<long, double> values) {
    for (const auto& [k, v] : values)
      if (!(v > 0.0) || !std::isfinite(v)) throw ParameterError("Weight::table: values must be positive and finite");
    Weight w;
    w.kind_ = Kind::table;
    w.table_ = std::move(values);
    return w;
  }

  Kind kind() const { return kind_; }
  double r() const { return r_; }
  long truncation() const { return truncation_; }
  const std::map<long, double>& values() const { return table_; }

  double log_value(long k) const {
    const double a = static_cast<double>(k < 0 ? -k : k);
    switch (kind_) {
      case Kind::polynomial:
        return r_ * std::log1p(a);
      case Kind::subexp: {
        if (truncation_ < 0) return log_phi(r_, a);
        if (a == 0.0) return 0.0;
        LogSum s;
        for (long l = 0; l <= truncation_; ++l)
          s.add_log(static_cast<double>(l) * std::log(a) - r_ * log_factorial(static_cast<double>(l)));
        return s.log();
      }
      case Kind::table: {
        auto it = table_.find(k);
        if (it == table_.end()) throw ParameterError("Weight::table: no value at offset " + std::to_string(k));
        return std::log(it->second);
      }
    }
    return kNaN;
  }
  double operator()(long k) const { return std::exp(log_value(k)); }

  std::string kind_name() const {
    switch (kind_) {
      case Kind::polynomial: return "polynomial";
      case Kind::subexp: return "subexp";
      case Kind::table: return "table";
    }
    return "?";
  }

 private:
  Kind kind_ = Kind::polynomial;
  double r_ = 0.0;
  long truncation_ = -1;
  std::map<long, double> table_;
};

/// Dales-Davie sequence (M_k), used as the denominator in sum_k ||D^k a|| / M_k.
///   finite(K):  M_k = k! for k <= K, +inf beyond (the domain D(D^K))
///   analytic:   M_k = k!
///   gevrey(r):  M_k = k!^r
///   custom:     explicit values M_0..M_n; beyond n is an error
class SmoothnessSequence {
 public:
  enum class Kind { finite, analytic, gevrey, custom };

  static SmoothnessSequence finite(long K) {
    if (K < 0) throw ParameterError("SmoothnessSequence::finite: K must be nonnegative");
    SmoothnessSequence s;
    s.kind_ = Kind::finite;
    s.K_ = K;
    return s;
  }
  static SmoothnessSequence analytic() {
    SmoothnessSequence s;
    s.kind_ = Kind::analytic;
    s.r_ = 1.0;
    return s;
  }
  static SmoothnessSequence gevrey(double r) {
    if (!(r > 0.0) || !std::isfinite(r)) throw ParameterError("SmoothnessSequence::gevrey: r must be positive");
    SmoothnessSequence s;
    s.kind_ = Kind::gevrey;
    s.r_ = r;
    return s;
  }
  static SmoothnessSequence custom(std::vector<double> M) {
    if (M.empty() || M[0] != 1.0) throw ParameterError("SmoothnessSequence::custom: M_0 must equal 1");
    for (double v : M)
      if (!(v > 0.0)) throw ParameterError("SmoothnessSequence::custom: values must be positive");
    SmoothnessSequence s;
    s.kind_ = Kind::custom;
    s.custom_ = std::move(M);
    return s;
  }

  Kind kind() const { return kind_; }
  double r() const { return r_; }
  long K() const { return K_; }
  const std::vector<double>& custom_values() const { return custom_; }

  double log_M(long k) const {
    if (k < 0) throw ParameterError("SmoothnessSequence: negative index");
    const double lf = log_factorial(static_cast<double>(k));
    switch (kind_) {
      case Kind::finite: return k <= K_ ? lf : kInf;
      case Kind::analytic: return lf;
      case Kind::gevrey: return r_ * lf;
      case Kind::custom:
        if (static_cast<std::size_t>(k) >= custom_.size())
          throw ParameterError("SmoothnessSequence::custom: index beyond supplied values");
        return std::log(custom_[static_cast<std::size_t>(k)]);
    }
    return kNaN;
  }
  double M(long k) const { return std::exp(log_M(k)); }

  /// Largest index with a defined value (custom), otherwise -1 (unbounded).
  long max_index() const { return kind_ == Kind::custom ? static_cast<long>(custom_.size()) - 1 : -1; }

  /// Checks M_0 = 1 and M_{k+l}/(k+l)! >= (M_k/k!)(M_l/l!) for k + l <= n.
  bool admissible(long n, double rel_tol = 1e-12) const {
    if (std::abs(log_M(0)) > 1e-15) return false;
    const long top = max_index() >= 0 ? std::min(n, max_index()) : n;
    auto q = [&](long k) { return log_M(k) - log_factorial(static_cast<double>(k)); };
    for (long k = 0; k <= top; ++k)
      for (long l = 0; k + l <= top; ++l) {
        const double lhs = q(k + l), rhs = q(k) + q(l);
        if (lhs == kInf) continue;
        if (lhs < rhs - rel_tol * std::max(1.0, std::abs(rhs))) return false;
      }
    return true;
  }

  /// The weight v_M(x) = sum_k x^k / M_k for which the Dales-Davie norm of a
  /// matrix over C_0 equals its C_{v_M} norm. Not defined for custom sequences.
  Weight induced_weight() const {
    switch (kind_) {
      case Kind::finite: return Weight::subexp(1.0, K_);
      case Kind::analytic: return Weight::subexp(1.0);
      case Kind::gevrey: return Weight::subexp(r_);
      case Kind::custom: break;
    }
    throw ParameterError("SmoothnessSequence::induced_weight: not available for custom sequences");
  }

  std::string kind_name() const {
    switch (kind_) {
      case Kind::finite: return "finite";
      case Kind::analytic: return "analytic";
      case Kind::gevrey: return "gevrey";
      case Kind::custom: return "custom";
    }
    return "?";
  }

 private:
  Kind kind_ = Kind::analytic;
  double r_ = 1.0;
  long K_ = 0;
  std::vector<double> custom_;
};

}  // namespace decayinv
