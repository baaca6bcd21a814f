#pragma once

// Iterated quotient and product rules for the derivation D and the
// difference operator Delta_t = psi_t - id, as explicit matrix sums.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "decayinv/compositions.hpp"
#include "decayinv/errors.hpp"
#include "decayinv/lattice_matrix.hpp"

namespace decayinv {

inline constexpr int kQuotientMaxOrder = 8;

namespace detail {

inline void require_order(int k, int max_k, const char* who) {
  if (k < 1) throw ParameterError(std::string(who) + ": k must be positive");
  if (k > max_k) throw ParameterError(std::string(who) + ": k exceeds the order cap");
}

inline double binomial(int k, int l) {
  double b = 1.0;
  for (int i = 1; i <= l; ++i) b = b * static_cast<double>(k - l + i) / static_cast<double>(i);
  return b;
}

}  // namespace detail

/// sum_{m=1}^k (-1)^m sum_{k_1+..+k_m=k} binom(k; k_1..k_m) A^{-1}D^{k_1}(A) ... A^{-1}D^{k_m}(A) A^{-1}.
inline LatticeMatrix derivation_quotient_rhs(const LatticeMatrix& a, int k, int max_k = kQuotientMaxOrder) {
  detail::require_order(k, max_k, "derivation_quotient_rhs");
  const IndexWindow w = a.window();
  const long n = w.size();
  const CMatrix inv = invert_truncated(a).entries();
  std::vector<CMatrix> x(static_cast<std::size_t>(k + 1));
  for (int j = 1; j <= k; ++j) x[static_cast<std::size_t>(j)] = inv * derivation_power(a, j).entries();

  CMatrix acc = CMatrix::Zero(n, n);
  for (int m = 1; m <= k; ++m) {
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    for_each_composition(k, m, [&](const std::vector<int>& parts) {
      CMatrix prod = x[static_cast<std::size_t>(parts[0])];
      for (std::size_t i = 1; i < parts.size(); ++i) prod = prod * x[static_cast<std::size_t>(parts[i])];
      acc += (sign * static_cast<double>(multinomial(k, Composition{parts}))) * prod;
    });
  }
  return LatticeMatrix(w, acc * inv);
}

/// sum_{l=0}^k binom(k,l) psi_{(k-l)t}(Delta_t^l A) Delta_t^{k-l} B.
inline LatticeMatrix difference_product_rhs(const LatticeMatrix& a, const LatticeMatrix& b, double t, int k) {
  if (k < 0) throw ParameterError("difference_product_rhs: k must be nonnegative");
  if (!(a.window() == b.window())) throw ParameterError("difference_product_rhs: window mismatch");
  const long n = a.size();
  CMatrix acc = CMatrix::Zero(n, n);
  for (int l = 0; l <= k; ++l) {
    const CMatrix left = apply_automorphism(difference_power(a, t, l), static_cast<double>(k - l) * t).entries();
    acc += detail::binomial(k, l) * (left * difference_power(b, t, k - l).entries());
  }
  return LatticeMatrix(a.window(), std::move(acc));
}

/// psi_{kt}(A^{-1}) sum_{m=1}^k (-1)^m sum_{k_1+..+k_m=k} binom(k; k_1..k_m)
///   prod_{j=1}^m psi_{(k - k_1 - .. - k_j)t}((Delta_t^{k_j} A) A^{-1}).
inline LatticeMatrix difference_quotient_rhs(const LatticeMatrix& a, double t, int k,
                                             int max_k = kQuotientMaxOrder) {
  detail::require_order(k, max_k, "difference_quotient_rhs");
  const IndexWindow w = a.window();
  const long n = w.size();
  const LatticeMatrix inv = invert_truncated(a);
  // y[j][s] = psi_{st}((Delta_t^j A) A^{-1})
  std::vector<std::vector<CMatrix>> y(static_cast<std::size_t>(k + 1));
  for (int j = 1; j <= k; ++j) {
    const LatticeMatrix base(w, difference_power(a, t, j).entries() * inv.entries());
    y[static_cast<std::size_t>(j)].resize(static_cast<std::size_t>(k));
    for (int s = 0; s <= k - j; ++s)
      y[static_cast<std::size_t>(j)][static_cast<std::size_t>(s)] =
          apply_automorphism(base, static_cast<double>(s) * t).entries();
  }

  CMatrix acc = CMatrix::Zero(n, n);
  for (int m = 1; m <= k; ++m) {
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    for_each_composition(k, m, [&](const std::vector<int>& parts) {
      int rest = k;
      CMatrix prod;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        rest -= parts[i];
        const CMatrix& f = y[static_cast<std::size_t>(parts[i])][static_cast<std::size_t>(rest)];
        prod = (i == 0) ? f : CMatrix(prod * f);
      }
      acc += (sign * static_cast<double>(multinomial(k, Composition{parts}))) * prod;
    });
  }
  return LatticeMatrix(w, apply_automorphism(inv, static_cast<double>(k) * t).entries() * acc);
}

/// sum_{l=0}^k binom(k,l) psi_{lt}(Delta_t^{k-l} A) Delta_t^l(A^{-1}), which is
/// Delta_t^k(A A^{-1}) = 0 for k >= 1.
inline LatticeMatrix telescoping_sum(const LatticeMatrix& a, double t, int k) {
  return difference_product_rhs(a, invert_truncated(a), t, k);
}

struct IdentityError {
  double max_abs_err = 0.0;
  double max_rel_err = 0.0;  ///< max_abs_err over the larger of the two sides' max entry
};

/// Entrywise comparison on the window shrunk by margin.
inline IdentityError verify_identity(const LatticeMatrix& lhs, const LatticeMatrix& rhs, long margin) {
  if (!(lhs.window() == rhs.window())) throw ParameterError("verify_identity: window mismatch");
  const IndexWindow inner = lhs.window().shrink(margin);
  const long off = margin, m = inner.size();
  const auto l = lhs.entries().block(off, off, m, m);
  const auto r = rhs.entries().block(off, off, m, m);
  IdentityError e;
  e.max_abs_err = (l - r).cwiseAbs().maxCoeff();
  const double scale = std::max(l.cwiseAbs().maxCoeff(), r.cwiseAbs().maxCoeff());
  e.max_rel_err = scale > 0.0 ? e.max_abs_err / scale : 0.0;
  return e;
}

}  // namespace decayinv
