#pragma once

// Finite windows of bi-infinite matrices indexed by Z x Z, the phase
// automorphism group psi_t(A)(k,l) = e^{2 pi i (k-l) t} A(k,l), the derivation
// D(A)(k,l) = (k-l) A(k,l), difference operators (psi_t - id)^k, and
// finite-section inversion.
//
// Every infinite-matrix statement is realized on a window [lo, hi]. Toeplitz
// structure is carried as a tag holding the symbol, so closed forms remain
// available to the norm layer after windowing.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "decayinv/errors.hpp"
#include "decayinv/numerics.hpp"

namespace decayinv {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

struct IndexWindow {
  long lo = 0;
  long hi = 0;

  IndexWindow() = default;
  IndexWindow(long lo_, long hi_) : lo(lo_), hi(hi_) {
    if (lo > hi) throw ParameterError("IndexWindow: lo must not exceed hi");
  }
  static IndexWindow symmetric(long n) { return {-n, n}; }

  long size() const { return hi - lo + 1; }
  bool contains(long k) const { return lo <= k && k <= hi; }
  long local(long k) const { return k - lo; }

  /// Inner window [lo + margin, hi - margin].
  IndexWindow shrink(long margin) const {
    if (margin < 0 || 2 * margin >= size())
      throw ParameterError("IndexWindow::shrink: margin must be below half the window size");
    return {lo + margin, hi - margin};
  }

  friend bool operator==(const IndexWindow&, const IndexWindow&) = default;
};

/// Closed-form descriptor for coefficients
///   c(direction * j) = scale * (direction * j)^derivative_order * (phase * e^{-gamma})^j,  j >= 0,
/// the family of geometric Toeplitz inverses sum_j e^{-gamma j} T_j and its
/// images under scaling, the phase group and the derivation.
struct GeometricSeries {
  double gamma = 1.0;
  cplx scale{1.0, 0.0};
  cplx phase{1.0, 0.0};
  int direction = 1;
  int derivative_order = 0;

  cplx coefficient(long offset) const {
    if (offset * direction < 0) return {0.0, 0.0};
    const long j = offset * direction;
    const double m = static_cast<double>(offset);
    return scale * ipow(m, derivative_order) * std::pow(phase, static_cast<double>(j)) *
           std::exp(-gamma * static_cast<double>(j));
  }

  /// log |c(direction * j)|, -inf for vanishing coefficients.
  double log_magnitude(long j) const {
    if (j < 0) return -kInf;
    if (derivative_order > 0 && j == 0) return -kInf;
    return std::log(std::abs(scale)) + derivative_order * std::log(static_cast<double>(j > 0 ? j : 1)) -
           gamma * static_cast<double>(j);
  }
};

/// Coefficients c(m) of a Toeplitz matrix T(k,l) = c(k - l). Finitely
/// supported; geometric families also carry their closed form and the
/// C_0-mass of the coefficients dropped by truncation.
class ToeplitzSymbol {
 public:
  ToeplitzSymbol() = default;
  explicit ToeplitzSymbol(std::map<long, cplx> coeffs, std::optional<GeometricSeries> closed_form = std::nullopt,
                          double tail_bound = 0.0)
      : coeffs_(std::move(coeffs)), closed_form_(closed_form), tail_bound_(tail_bound) {
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
      if (!std::isfinite(it->second.real()) || !std::isfinite(it->second.imag()))
        throw ParameterError("ToeplitzSymbol: coefficients must be finite");
      if (it->second == cplx{0.0, 0.0})
        it = coeffs_.erase(it);
      else
        ++it;
    }
    if (!(tail_bound_ >= 0.0)) throw ParameterError("ToeplitzSymbol: tail bound must be nonnegative");
  }

  cplx operator()(long m) const {
    auto it = coeffs_.find(m);
    return it == coeffs_.end() ? cplx{0.0, 0.0} : it->second;
  }

  const std::map<long, cplx>& coefficients() const { return coeffs_; }
  const std::optional<GeometricSeries>& closed_form() const { return closed_form_; }
  double tail_bound() const { return tail_bound_; }
  bool empty() const { return coeffs_.empty(); }

  long max_offset() const {
    long m = 0;
    for (const auto& [k, _] : coeffs_) m = std::max(m, std::abs(k));
    return m;
  }

  /// Fourier symbol sum_m c(m) e^{2 pi i m theta}.
  cplx evaluate(double theta) const {
    cplx s{0.0, 0.0};
    for (const auto& [m, c] : coeffs_) s += c * unit_phase(static_cast<double>(m) * theta);
    return s;
  }

  /// Coefficientwise map m -> f(m, c(m)); drops the closed form.
  template <class F>
  ToeplitzSymbol transformed(F&& f, double tail_factor) const {
    std::map<long, cplx> out;
    for (const auto& [m, c] : coeffs_) out[m] = f(m, c);
    return ToeplitzSymbol(std::move(out), std::nullopt, tail_bound_ * tail_factor);
  }

  ToeplitzSymbol scaled(cplx s) const {
    std::map<long, cplx> out;
    for (const auto& [m, c] : coeffs_) out[m] = s * c;
    std::optional<GeometricSeries> cf = closed_form_;
    if (cf) cf->scale *= s;
    return ToeplitzSymbol(std::move(out), cf, tail_bound_ * std::abs(s));
  }

 private:
  friend class LatticeMatrix;
  std::map<long, cplx> coeffs_;
  std::optional<GeometricSeries> closed_form_;
  double tail_bound_ = 0.0;
};

struct GeneralTag {};
struct ToeplitzTag {
  ToeplitzSymbol symbol;
};
struct BandedTag {
  long bandwidth = 0;
};
using StructureTag = std::variant<GeneralTag, ToeplitzTag, BandedTag>;

/// A complex matrix on window x window. Immutable after construction.
class LatticeMatrix {
 public:
  LatticeMatrix(IndexWindow window, CMatrix entries, StructureTag tag = GeneralTag{})
      : window_(window), entries_(std::move(entries)), tag_(std::move(tag)) {
    validate();
  }

  static LatticeMatrix identity(IndexWindow w) {
    return LatticeMatrix(w, CMatrix::Identity(w.size(), w.size()),
                         ToeplitzTag{ToeplitzSymbol({{0, cplx{1.0, 0.0}}})});
  }
  static LatticeMatrix zero(IndexWindow w) {
    return LatticeMatrix(w, CMatrix::Zero(w.size(), w.size()), ToeplitzTag{ToeplitzSymbol{}});
  }
  /// Diagonal matrix with entries f(k), k in the window.
  template <class F>
  static LatticeMatrix diagonal(IndexWindow w, F&& f) {
    CMatrix m = CMatrix::Zero(w.size(), w.size());
    for (long k = w.lo; k <= w.hi; ++k) m(w.local(k), w.local(k)) = cplx(f(k));
    return LatticeMatrix(w, std::move(m), BandedTag{0});
  }
  /// Entries f(k, l) over the window.
  template <class F>
  static LatticeMatrix from_function(IndexWindow w, F&& f) {
    CMatrix m(w.size(), w.size());
    for (long k = w.lo; k <= w.hi; ++k)
      for (long l = w.lo; l <= w.hi; ++l) m(w.local(k), w.local(l)) = cplx(f(k, l));
    return LatticeMatrix(w, std::move(m));
  }

  const IndexWindow& window() const { return window_; }
  const CMatrix& entries() const { return entries_; }
  const StructureTag& tag() const { return tag_; }
  long size() const { return window_.size(); }

  /// Entry at global indices (k, l).
  cplx operator()(long k, long l) const { return entries_(window_.local(k), window_.local(l)); }

  const ToeplitzSymbol* symbol() const {
    if (auto* t = std::get_if<ToeplitzTag>(&tag_)) return &t->symbol;
    return nullptr;
  }
  std::optional<long> bandwidth() const {
    if (auto* b = std::get_if<BandedTag>(&tag_)) return b->bandwidth;
    if (auto* t = std::get_if<ToeplitzTag>(&tag_))
      if (!t->symbol.closed_form()) return t->symbol.max_offset();
    return std::nullopt;
  }

  /// Submatrix on an inner window. Keeps Toeplitz and banded tags.
  LatticeMatrix restrict_to(IndexWindow inner) const {
    if (inner.lo < window_.lo || inner.hi > window_.hi)
      throw ParameterError("LatticeMatrix::restrict_to: window is not contained");
    CMatrix sub = entries_.block(window_.local(inner.lo), window_.local(inner.lo), inner.size(), inner.size());
    return LatticeMatrix(inner, std::move(sub), tag_);
  }

  /// Same entries with the structural tag dropped.
  LatticeMatrix as_general() const { return LatticeMatrix(window_, entries_, GeneralTag{}); }

  friend LatticeMatrix operator*(const LatticeMatrix& a, const LatticeMatrix& b) {
    require_same_window(a, b, "product");
    return LatticeMatrix(a.window_, a.entries_ * b.entries_);
  }
  friend LatticeMatrix operator+(const LatticeMatrix& a, const LatticeMatrix& b) {
    require_same_window(a, b, "sum");
    return LatticeMatrix(a.window_, a.entries_ + b.entries_);
  }
  friend LatticeMatrix operator-(const LatticeMatrix& a, const LatticeMatrix& b) {
    require_same_window(a, b, "difference");
    return LatticeMatrix(a.window_, a.entries_ - b.entries_);
  }
  friend LatticeMatrix operator*(cplx s, const LatticeMatrix& a) {
    StructureTag tag = a.tag_;
    if (auto* t = std::get_if<ToeplitzTag>(&tag)) t->symbol = t->symbol.scaled(s);
    return LatticeMatrix(a.window_, s * a.entries_, std::move(tag));
  }

  static void require_same_window(const LatticeMatrix& a, const LatticeMatrix& b, const char* op) {
    if (!(a.window_ == b.window_))
      throw ParameterError(std::string("LatticeMatrix ") + op + ": window mismatch");
  }

 private:
  void validate() const {
    const long n = window_.size();
    if (entries_.rows() != n || entries_.cols() != n)
      throw ParameterError("LatticeMatrix: entry block does not match window size");
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j) {
        const cplx z = entries_(i, j);
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
          throw ParameterError("LatticeMatrix: entries must be finite");
      }
    if (auto* b = std::get_if<BandedTag>(&tag_)) {
      if (b->bandwidth < 0) throw ParameterError("LatticeMatrix: negative bandwidth");
      for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
          if (std::abs(i - j) > b->bandwidth && entries_(i, j) != cplx{0.0, 0.0})
            throw ParameterError("LatticeMatrix: banded tag violated");
    }
    if (auto* t = std::get_if<ToeplitzTag>(&tag_)) {
      double scale = 0.0;
      for (const auto& [m, c] : t->symbol.coefficients()) scale = std::max(scale, std::abs(c));
      const double tol = 1e-13 * std::max(scale, 1.0);
      for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
          if (std::abs(entries_(i, j) - t->symbol(i - j)) > tol)
            throw ParameterError("LatticeMatrix: Toeplitz tag does not match entries");
    }
  }

  IndexWindow window_;
  CMatrix entries_;
  StructureTag tag_;
};

/// T(k,l) = c(k - l) on the window.
inline LatticeMatrix make_toeplitz(const ToeplitzSymbol& symbol, IndexWindow window) {
  const long n = window.size();
  CMatrix m(n, n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) m(i, j) = symbol(i - j);
  return LatticeMatrix(window, std::move(m), ToeplitzTag{symbol});
}

/// Shift T_m: ones on the m-th side diagonal, (T_m x)(l) = x(l - m).
inline LatticeMatrix shift(long m, IndexWindow window) {
  return make_toeplitz(ToeplitzSymbol({{m, cplx{1.0, 0.0}}}), window);
}

/// C_gamma = I - e^{-gamma} T_1.
inline LatticeMatrix c_gamma(double gamma, IndexWindow window) {
  if (!(gamma > 0.0)) throw ParameterError("c_gamma: gamma must be positive");
  return make_toeplitz(ToeplitzSymbol({{0, cplx{1.0, 0.0}}, {1, cplx{-std::exp(-gamma), 0.0}}}), window);
}

/// Truncation of the series described by `series` with the omitted
/// C_0-mass bounded by tail_tol. Coefficients with derivative_order > 0 are
/// not supported here (use derivation_power on the result).
inline LatticeMatrix geometric_toeplitz(const GeometricSeries& series, IndexWindow window, double tail_tol) {
  if (!(series.gamma > 0.0)) throw ParameterError("geometric_toeplitz: gamma must be positive");
  if (!(tail_tol > 0.0)) throw ParameterError("geometric_toeplitz: tail_tol must be positive");
  if (series.derivative_order != 0) throw ParameterError("geometric_toeplitz: derivative_order must be 0");
  if (series.direction != 1 && series.direction != -1)
    throw ParameterError("geometric_toeplitz: direction must be +1 or -1");
  const double q = std::exp(-series.gamma);
  const double amp = std::abs(series.scale);
  // omitted mass amp * q^{K+1} / (1 - q) <= tail_tol
  long K = 0;
  const double denom = -std::expm1(-series.gamma);
  while (amp * std::exp(-series.gamma * static_cast<double>(K + 1)) / denom > tail_tol) ++K;
  std::map<long, cplx> coeffs;
  for (long j = 0; j <= K; ++j) coeffs[series.direction * j] = series.coefficient(series.direction * j);
  const double tail = amp * std::exp(-series.gamma * static_cast<double>(K + 1)) / denom;
  (void)q;
  return make_toeplitz(ToeplitzSymbol(std::move(coeffs), series, tail), window);
}

/// sum_{k=0}^{K} e^{-gamma k} T_k, the inverse of C_gamma, truncated so that
/// the omitted tail e^{-gamma (K+1)} / (1 - e^{-gamma}) <= tail_tol.
inline LatticeMatrix geometric_inverse_toeplitz(double gamma, IndexWindow window, double tail_tol = 1e-16) {
  if (!(gamma > 0.0)) throw ParameterError("geometric_inverse_toeplitz: gamma must be positive");
  GeometricSeries g;
  g.gamma = gamma;
  return geometric_toeplitz(g, window, tail_tol);
}

/// Exact inverse on l^2(Z) of a Toeplitz matrix c0 I + c1 T_{+-1} with
/// |c1| < |c0| (a geometric series), or of a scalar diagonal.
inline std::optional<LatticeMatrix> exact_toeplitz_inverse(const LatticeMatrix& a, double tail_tol = 1e-17) {
  const ToeplitzSymbol* sym = a.symbol();
  if (!sym || sym->closed_form()) return std::nullopt;
  const auto& c = sym->coefficients();
  const cplx c0 = (*sym)(0);
  if (c0 == cplx{0.0, 0.0}) return std::nullopt;
  if (c.size() == 1) return make_toeplitz(ToeplitzSymbol({{0, 1.0 / c0}}), a.window());
  if (c.size() != 2) return std::nullopt;
  int dir = 0;
  if (c.count(1)) dir = 1;
  if (c.count(-1)) dir = -1;
  if (dir == 0) return std::nullopt;
  const cplx ratio = -(*sym)(dir) / c0;
  const double mod = std::abs(ratio);
  if (!(mod < 1.0)) return std::nullopt;
  GeometricSeries g;
  g.gamma = -std::log(mod);
  g.scale = 1.0 / c0;
  g.phase = ratio / mod;
  g.direction = dir;
  return geometric_toeplitz(g, a.window(), tail_tol);
}

/// psi_t(A)(k,l) = e^{2 pi i (k-l) t} A(k,l); preserves Toeplitz and banded tags.
inline LatticeMatrix apply_automorphism(const LatticeMatrix& a, double t) {
  const IndexWindow w = a.window();
  const long n = w.size();
  std::vector<cplx> phase(static_cast<std::size_t>(2 * n - 1));
  for (long m = -(n - 1); m <= n - 1; ++m)
    phase[static_cast<std::size_t>(m + n - 1)] = unit_phase(static_cast<double>(m) * t);
  CMatrix out(n, n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) out(i, j) = phase[static_cast<std::size_t>(i - j + n - 1)] * a.entries()(i, j);

  StructureTag tag = a.tag();
  if (auto* tt = std::get_if<ToeplitzTag>(&tag)) {
    const ToeplitzSymbol& s = tt->symbol;
    std::map<long, cplx> coeffs;
    for (const auto& [m, c] : s.coefficients()) coeffs[m] = unit_phase(static_cast<double>(m) * t) * c;
    std::optional<GeometricSeries> cf = s.closed_form();
    if (cf) cf->phase *= unit_phase(static_cast<double>(cf->direction) * t);
    tt->symbol = ToeplitzSymbol(std::move(coeffs), cf, s.tail_bound());
    // rebuild so that entries and symbol agree bit-for-bit
    return make_toeplitz(tt->symbol, w);
  }
  return LatticeMatrix(w, std::move(out), std::move(tag));
}

/// D^k(A)(m,l) = (m - l)^k A(m,l).
inline LatticeMatrix derivation_power(const LatticeMatrix& a, int k) {
  if (k < 0) throw ParameterError("derivation_power: k must be nonnegative");
  if (k == 0) return a;
  const IndexWindow w = a.window();
  if (const ToeplitzSymbol* s = a.symbol()) {
    std::map<long, cplx> coeffs;
    double tail_factor = 0.0;
    for (const auto& [m, c] : s->coefficients()) coeffs[m] = ipow(static_cast<double>(m), k) * c;
    std::optional<GeometricSeries> cf = s->closed_form();
    if (cf) cf->derivative_order += k;
    // a truncated tail gets heavier under D^k; the closed form keeps norms exact
    if (s->tail_bound() > 0.0) tail_factor = cf ? 1.0 : kInf;
    return make_toeplitz(ToeplitzSymbol(std::move(coeffs), cf, s->tail_bound() * tail_factor), w);
  }
  const long n = w.size();
  CMatrix out(n, n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) out(i, j) = ipow(static_cast<double>(i - j), k) * a.entries()(i, j);
  StructureTag tag = a.tag();
  return LatticeMatrix(w, std::move(out), std::holds_alternative<BandedTag>(tag) ? tag : StructureTag{GeneralTag{}});
}

enum class DifferenceRoute { entrywise, binomial };

/// Delta_t^k(A) = (psi_t - id)^k (A). The entrywise route multiplies by
/// (e^{2 pi i m t} - 1)^k on offset m; the binomial route sums
/// binom(k,j) (-1)^{k-j} psi_{jt}(A).
inline LatticeMatrix difference_power(const LatticeMatrix& a, double t, int k,
                                      DifferenceRoute route = DifferenceRoute::entrywise) {
  if (k < 0) throw ParameterError("difference_power: k must be nonnegative");
  if (k == 0) return a;
  const IndexWindow w = a.window();
  const long n = w.size();
  if (route == DifferenceRoute::binomial) {
    CMatrix acc = CMatrix::Zero(n, n);
    double binom = 1.0;
    for (int j = 0; j <= k; ++j) {
      const double sign = ((k - j) % 2 == 0) ? 1.0 : -1.0;
      acc += (sign * binom) * apply_automorphism(a, static_cast<double>(j) * t).entries();
      binom = binom * static_cast<double>(k - j) / static_cast<double>(j + 1);
    }
    return LatticeMatrix(w, std::move(acc));
  }
  auto factor = [&](long m) { return std::pow(unit_phase(static_cast<double>(m) * t) - 1.0, k); };
  if (const ToeplitzSymbol* s = a.symbol()) {
    ToeplitzSymbol ns = s->transformed([&](long m, cplx c) { return factor(m) * c; }, std::ldexp(1.0, k));
    return make_toeplitz(ns, w);
  }
  std::vector<cplx> f(static_cast<std::size_t>(2 * n - 1));
  for (long m = -(n - 1); m <= n - 1; ++m) f[static_cast<std::size_t>(m + n - 1)] = factor(m);
  CMatrix out(n, n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) out(i, j) = f[static_cast<std::size_t>(i - j + n - 1)] * a.entries()(i, j);
  StructureTag tag = a.tag();
  return LatticeMatrix(w, std::move(out), std::holds_alternative<BandedTag>(tag) ? tag : StructureTag{GeneralTag{}});
}

/// Dense inverse of the window section. Throws SingularityError when the
/// LU reciprocal-condition estimate falls below rcond_floor.
inline LatticeMatrix invert_truncated(const LatticeMatrix& a, double rcond_floor = 1e-12) {
  Eigen::PartialPivLU<CMatrix> lu(a.entries());
  const double rc = lu.rcond();
  if (!(rc >= rcond_floor) || !std::isfinite(rc))
    throw SingularityError("invert_truncated: reciprocal condition estimate " + std::to_string(rc) +
                               " below floor",
                           std::isfinite(rc) ? rc : 0.0);
  CMatrix inv = lu.inverse();
  if (!inv.allFinite()) throw SingularityError("invert_truncated: non-finite inverse", 0.0);
  return LatticeMatrix(a.window(), std::move(inv));
}

/// Largest singular value of the window section by power iteration on A*A,
/// stopped when the Rayleigh quotient changes by at most tol (relative).
inline double operator_norm_l2(const LatticeMatrix& a, double tol = 1e-10, int max_iter = 100000) {
  if (!(tol > 0.0)) throw ParameterError("operator_norm_l2: tol must be positive");
  const CMatrix& m = a.entries();
  const long n = a.size();
  if (m.isZero(0.0)) return 0.0;
  CVector v(n);
  for (long i = 0; i < n; ++i) v(i) = cplx(1.0 + 0.25 * std::sin(0.7 * static_cast<double>(i) + 0.3), 0.0);
  v.normalize();
  double lambda = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    CVector w = m.adjoint() * (m * v);
    const double next = std::real(v.dot(w));
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;
    v = w / nw;
    if (it > 0 && std::abs(next - lambda) <= tol * next) return std::sqrt(next);
    lambda = next;
  }
  throw NumericalError("operator_norm_l2: power iteration did not converge", std::sqrt(lambda));
}

/// Extrema of |symbol(theta)| over the circle; closed form for geometric
/// families, otherwise a dense grid refined by golden-section search.
struct SymbolExtrema {
  double max_modulus = 0.0;
  double min_modulus = 0.0;
};

inline SymbolExtrema symbol_extrema(const ToeplitzSymbol& s) {
  if (const auto& cf = s.closed_form(); cf && cf->derivative_order == 0) {
    const double q = std::exp(-cf->gamma);
    const double amp = std::abs(cf->scale);
    return {amp / (1.0 - q), amp / (1.0 + q)};
  }
  if (s.empty()) return {0.0, 0.0};
  const long grid = 1024 * (s.max_offset() + 1);
  std::vector<double> vals(static_cast<std::size_t>(grid));
  for (long i = 0; i < grid; ++i) vals[static_cast<std::size_t>(i)] = std::abs(s.evaluate(static_cast<double>(i) / grid));
  auto refine = [&](long i, bool maximize) {
    double a = static_cast<double>(i - 1) / grid, b = static_cast<double>(i + 1) / grid;
    auto f = [&](double th) { return maximize ? -std::abs(s.evaluate(th)) : std::abs(s.evaluate(th)); };
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 80; ++it) {
      if (fc < fd) { b = d; d = c; fd = fc; c = b - gr * (b - a); fc = f(c); }
      else { a = c; c = d; fc = fd; d = a + gr * (b - a); fd = f(d); }
    }
    const double best = std::min({fc, fd, f(static_cast<double>(i) / grid)});
    return maximize ? -best : best;
  };
  const auto imax = std::distance(vals.begin(), std::max_element(vals.begin(), vals.end()));
  const auto imin = std::distance(vals.begin(), std::min_element(vals.begin(), vals.end()));
  return {refine(imax, true), refine(imin, false)};
}

}  // namespace decayinv
