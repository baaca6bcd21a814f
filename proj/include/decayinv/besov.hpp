#pragma once

// Besov seminorms |A|_{Lambda^p_r} = (int_R (|t|^{-r} ||Delta_t^k A||)^p dt/|t|)^{1/p}
// and the hypersingular seminorm sup_eps || int_{eps<=|t|<=1} Delta_t A / |t|^r dt ||
// for the phase group psi_t.
//
// Delta_t^k multiplies offset m by (e^{2 pi i m t} - 1)^k, so for the C_0 and
// J_s ambients ||Delta_t^k A|| depends only on the side-diagonal profile:
//   g(t) = sum_m d(m) |2 sin(pi m t)|^k      (C_0)
//   g(t) = max_m d(m) (1+|m|)^s |2 sin(pi m t)|^k   (J_s)
// g is even and 1-periodic, which turns the integral over |t| > 1 into an
// integral over [0, 1] against H(s) = sum_{n>=1} (n + s)^{-rp-1}.
// For p = 1 on C_0 the integral splits over offsets and scales exactly:
//   |A| = 2 K(r, k) sum_m d(m) |m|^r.

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <optional>
#include <vector>

#include "decayinv/errors.hpp"
#include "decayinv/lattice_matrix.hpp"
#include "decayinv/norms.hpp"

namespace decayinv {

struct QuadratureShell {
  double lo = 0.0;
  double hi = 0.0;
  double contribution = 0.0;
  double error = 0.0;
};

struct SeminormEstimate {
  double value = 0.0;
  double quadrature_error = 0.0;
  double tail_bound = 0.0;
  double p = 1.0;  ///< +inf for the supremum
  double r = 0.0;
  int k = 1;
  Ambient ambient;
  std::vector<QuadratureShell> trace;
};

/// Offsets with their ambient-weighted magnitudes a_m and the mass omitted
/// by truncating an infinite profile.
struct WeightedOffsets {
  std::vector<long> offsets;
  std::vector<double> weights;
  bool use_max = false;
  double tail = 0.0;  ///< omitted sum (C_0) or sup (J_s) of the weighted magnitudes

  /// sum_m a_m f(m) or max_m a_m f(m) with f >= 0.
  template <class F>
  double combine(F&& f) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < offsets.size(); ++i) {
      const double x = weights[i] * f(offsets[i]);
      acc = use_max ? std::max(acc, x) : acc + x;
    }
    return acc;
  }
};

inline WeightedOffsets weighted_offsets(const DiagonalProfile& p, const Ambient& amb, double rel_tol = 1e-17) {
  if (amb.kind == Ambient::Kind::Operator) throw ParameterError("weighted_offsets: operator ambient has no profile form");
  WeightedOffsets out;
  out.use_max = amb.kind == Ambient::Kind::Jaffard;
  const Weight w = amb.kind == Ambient::Kind::Jaffard ? Weight::polynomial(amb.s) : Weight::constant_one();
  if (!p.closed_form) {
    for (const auto& [m, d] : p.finite) {
      out.offsets.push_back(m);
      out.weights.push_back(d * w(m));
    }
    return out;
  }
  const GeometricSeries& g = *p.closed_form;
  const double total = out.use_max ? weighted_sup(p, w).first : weighted_sum(p, w).value;
  double partial = 0.0;
  for (long j = 0;; ++j) {
    const double lt = g.log_magnitude(j) + w.log_value(j);
    const double a = std::exp(lt);
    if (a > 0.0) {
      out.offsets.push_back(j * g.direction);
      out.weights.push_back(a);
      partial = out.use_max ? std::max(partial, a) : partial + a;
    }
    // remaining terms decay at least geometrically past the peak
    const double ratio = std::exp(g.log_magnitude(j + 1) + w.log_value(j + 1) - lt);
    if (j > 0 && ratio < 1.0) {
      const double rest = out.use_max ? a * ratio : a * ratio / (1.0 - ratio);
      if (rest <= rel_tol * total) {
        out.tail = rest;
        break;
      }
    }
    if (j > 50'000'000) throw NumericalError("weighted_offsets: profile truncation did not terminate", partial);
  }
  return out;
}

struct BesovOptions {
  double t_min = 1e-6;       ///< below this the near-zero bound takes over
  double rel_tol = 1e-10;    ///< per-shell Gauss-Kronrod tolerance
  unsigned max_depth = 18;
  int sup_samples = 4000;    ///< p = infinity: grid points per sampling family
  bool keep_trace = false;
  bool separable = true;     ///< p = 1 on C_0: offset-wise scaling instead of quadrature
};

namespace detail {

inline double two_sin_abs(long m, double t) {
  // |e^{2 pi i m t} - 1| = 2 |sin(pi m t)|, reduced exactly modulo the period
  const double x = static_cast<double>(m) * t;
  const double f = x - std::round(x);
  return 2.0 * std::abs(std::sin(std::numbers::pi * f));
}

/// H(s) = sum_{n >= 1} (n + s)^{-alpha}, alpha > 1, by a direct sum and an
/// Euler-Maclaurin remainder.
inline double hurwitz_tail(double alpha, double s) {
  constexpr int N = 24;
  double sum = 0.0;
  for (int n = 1; n < N; ++n) sum += std::pow(n + s, -alpha);
  const double x = N + s;
  sum += std::pow(x, 1.0 - alpha) / (alpha - 1.0) + 0.5 * std::pow(x, -alpha) +
         alpha * std::pow(x, -alpha - 1.0) / 12.0 -
         alpha * (alpha + 1.0) * (alpha + 2.0) * std::pow(x, -alpha - 3.0) / 720.0;
  return sum;
}

template <class F>
std::pair<double, double> gk_integrate(F&& f, double a, double b, const BesovOptions& opt) {
  // Boost 1.74 compares an unscaled error against a length-scaled tolerance,
  // so integrate over a unit-length variable and scale afterwards
  const double h = b - a;
  auto unit = [&](double u) { return f(a + h * u); };
  double err = 0.0;
  double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(unit, 0.0, 1.0, opt.max_depth, opt.rel_tol, &err);
  v *= h;
  err *= h;
  if (!std::isfinite(v)) throw NumericalError("besov: non-finite quadrature value", 0.0);
  return {v, err};
}

}  // namespace detail

struct ScaleConstant {
  double value = 0.0;
  double error = 0.0;
};

/// K(r, k) = int_0^inf u^{-r-1} |2 sin(pi u)|^k du, 0 < r < k. Unit cells up to
/// N = 2^16, the mean of |2 sin|^k past N, and a Taylor head below 1e-4.
inline ScaleConstant besov_scale_constant(double r, int k) {
  if (!(r > 0.0 && r < k)) throw ParameterError("besov_scale_constant: need 0 < r < k");
  static std::mutex mu;
  static std::map<std::pair<double, int>, ScaleConstant> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find({r, k}); it != cache.end()) return it->second;
  }
  BesovOptions opt;
  opt.rel_tol = 1e-14;
  opt.max_depth = 10;
  const double pi = std::numbers::pi;
  ScaleConstant out;
  // (0, h]: (2 pi u)^k (1 - k (pi u)^2 / 6) u^{-r-1}
  double hi = 1.0;
  while (hi > 1e-4) {
    const double lo = hi / 2.0;
    auto [v, e] = detail::gk_integrate(
        [&](double u) { return ipow(2.0 * std::sin(pi * u), k) * std::pow(u, -r - 1.0); }, lo, hi, opt);
    out.value += v;
    out.error += e;
    hi = lo;
  }
  out.value += std::pow(2.0 * pi, k) *
               (std::pow(hi, k - r) / (k - r) - k * pi * pi / 6.0 * std::pow(hi, k - r + 2.0) / (k - r + 2.0));
  constexpr long N = 1L << 16;
  for (long n = 1; n < N; ++n) {
    auto [v, e] = detail::gk_integrate(
        [&](double v) { return ipow(2.0 * std::sin(pi * v), k) * std::pow(n + v, -r - 1.0); }, 0.0, 1.0, opt);
    out.value += v;
    out.error += e;
  }
  // past N: mean times int u^{-r-1}; |2 sin|^k is symmetric on a period, so the
  // first correction vanishes and the next is O(N^{-r-2})
  const double mean = std::ldexp(std::tgamma((k + 1.0) / 2.0) / (std::sqrt(pi) * std::tgamma(k / 2.0 + 1.0)), k);
  out.value += mean * std::pow(static_cast<double>(N), -r) / r;
  out.error += std::ldexp((r + 1.0) * std::pow(static_cast<double>(N), -r - 2.0), k);
  std::lock_guard<std::mutex> lock(mu);
  cache[{r, k}] = out;
  return out;
}

/// g(t) = ||Delta_t^k A|| in the ambient.
inline double difference_norm(const LatticeMatrix& a, double t, int k, const Ambient& amb) {
  if (amb.kind != Ambient::Kind::Operator)
    return weighted_offsets(diagonal_profile(a), amb).combine([&](long m) { return ipow(detail::two_sin_abs(m, t), k); });
  return ambient_norm(difference_power(a, t, k), amb);
}

/// |A|_{Lambda^p_r(ambient)} with k > r (default floor(r) + 1).
inline SeminormEstimate besov_seminorm(const LatticeMatrix& a, double p, double r, std::optional<int> k_opt = std::nullopt,
                                       const Ambient& amb = Ambient::c0(), const BesovOptions& opt = {}) {
  if (!(r > 0.0)) throw ParameterError("besov_seminorm: r must be positive");
  if (!(p >= 1.0)) throw ParameterError("besov_seminorm: p must be at least 1");
  const int k = k_opt.value_or(static_cast<int>(std::floor(r)) + 1);
  if (!(k > r)) throw ParameterError("besov_seminorm: k must exceed r");

  SeminormEstimate est;
  est.p = p;
  est.r = r;
  est.k = k;
  est.ambient = amb;

  // p = 1 on C_0: int |t|^{-r-1} |2 sin(pi m t)|^k dt = 2 |m|^r K(r, k) for each offset
  if (p == 1.0 && amb.kind == Ambient::Kind::C0 && opt.separable) {
    const DiagonalProfile prof = diagonal_profile(a);
    double moment = 0.0, tail = 0.0;
    if (prof.closed_form) {
      const GeometricSeries& gs = *prof.closed_form;
      const SeriesResult s =
          sum_log_series([&](long long j) { return gs.log_magnitude(static_cast<long>(j)) + r * std::log(static_cast<double>(j)); }, 1);
      moment = s.value();
      tail = s.tail();
    } else {
      for (const auto& [m, d] : prof.finite)
        if (m != 0) moment += d * std::pow(std::abs(static_cast<double>(m)), r);
    }
    if (moment == 0.0) return est;
    const ScaleConstant K = besov_scale_constant(r, k);
    est.value = 2.0 * K.value * moment;
    est.quadrature_error = 2.0 * K.error * moment;
    est.tail_bound = 2.0 * K.value * tail;
    return est;
  }

  // g and the near-zero constant D_k with g(t) <= (2 pi t)^k D_k
  std::function<double(double)> g;
  double Dk = 0.0;
  double g_trunc = 0.0;  // sup |g - g_computed|
  std::optional<WeightedOffsets> wo;
  if (amb.kind != Ambient::Kind::Operator) {
    wo = weighted_offsets(diagonal_profile(a), amb);
    if (wo->offsets.empty() || (wo->offsets.size() == 1 && wo->offsets[0] == 0)) return est;
    g = [&, k](double t) { return wo->combine([&](long m) { return ipow(detail::two_sin_abs(m, t), k); }); };
    Dk = wo->combine([&](long m) { return ipow(std::abs(static_cast<double>(m)), k); });
    g_trunc = std::ldexp(wo->tail, k);
  } else {
    if (derivation_power(a, 1).entries().isZero(0.0)) return est;
    g = [&, k](double t) { return ambient_norm(difference_power(a, t, k), amb); };
    Dk = ambient_norm(derivation_power(a, k), amb);
  }
  const double tmin = opt.t_min;
  const double twopi = 2.0 * std::numbers::pi;

  if (std::isinf(p)) {
    // g is 1-periodic and t^{-r} <= 1 for t >= 1, so the sup over t > 0 is attained in (0, 1]
    auto f = [&](double t) { return std::pow(t, -r) * g(t); };
    double best = 0.0, arg = 1.0;
    const int n = opt.sup_samples;
    for (int i = 0; i <= n; ++i) {
      const double tl = tmin * std::pow(1.0 / tmin, static_cast<double>(i) / n);
      const double tu = std::max(tmin, static_cast<double>(i) / n);
      for (double t : {tl, tu}) {
        const double v = f(t);
        if (v > best) {
          best = v;
          arg = t;
        }
      }
    }
    // golden refinement in a bracket around the best sample
    const double span = std::max(arg * (std::pow(1.0 / tmin, 1.0 / n) - 1.0), 1.0 / n);
    double lo = std::max(tmin, arg - span), hi = std::min(1.0, arg + span);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 100 && hi - lo > 1e-15 * hi; ++it) {
      if (fc > fd) {
        hi = d; d = c; fd = fc; c = hi - gr * (hi - lo); fc = f(c);
      } else {
        lo = c; c = d; fc = fd; d = lo + gr * (hi - lo); fd = f(d);
      }
    }
    est.value = std::max({best, fc, fd});
    // near zero: t^{-r} g(t) <= (2 pi)^k D_k t^{k-r} <= (2 pi)^k D_k tmin^{k-r}
    const double near = std::pow(twopi, k) * Dk * std::pow(tmin, k - r);
    est.tail_bound = std::max(0.0, near - est.value) + g_trunc * std::pow(tmin, -r);
    est.quadrature_error = 0.0;
    return est;
  }

  const double alpha = r * p + 1.0;
  auto integrand = [&](double s, bool with_local) {
    const double gv = g(s);
    if (gv == 0.0) return 0.0;
    const double w = (with_local ? std::pow(s, -alpha) : 0.0) + detail::hurwitz_tail(alpha, s);
    return std::pow(gv, p) * w;
  };

  double total = 0.0, err = 0.0;
  // [0, tmin]: periodic far field only; the local part is bounded analytically
  {
    auto [v, e] = detail::gk_integrate([&](double s) { return integrand(s, false); }, 0.0, tmin, opt);
    total += v;
    err += e;
  }
  // dyadic shells [2^{-j-1}, 2^{-j}] down to tmin; refine further for fast oscillations
  const long max_off = wo && !wo->offsets.empty()
                           ? std::abs(*std::max_element(wo->offsets.begin(), wo->offsets.end(),
                                                        [](long x, long y) { return std::abs(x) < std::abs(y); }))
                           : a.size();
  std::vector<double> cuts{1.0};
  while (cuts.back() / 2.0 > tmin) cuts.push_back(cuts.back() / 2.0);
  cuts.push_back(tmin);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double hi = cuts[i], lo = cuts[i + 1];
    // panels of width about 1 / max_off hold one oscillation of the top frequency
    const long pieces = std::max<long>(1, static_cast<long>(std::ceil((hi - lo) * static_cast<double>(max_off))));
    const long npieces = std::min<long>(pieces, 1024);
    double shell = 0.0, shell_err = 0.0;
    for (long q = 0; q < npieces; ++q) {
      const double a0 = lo + (hi - lo) * q / npieces, b0 = lo + (hi - lo) * (q + 1) / npieces;
      auto [v, e] = detail::gk_integrate([&](double s) { return integrand(s, true); }, a0, b0, opt);
      shell += v;
      shell_err += e;
    }
    total += shell;
    err += shell_err;
    if (opt.keep_trace) est.trace.push_back({lo, hi, 2.0 * shell, 2.0 * shell_err});
  }
  // both signs of t
  total *= 2.0;
  err *= 2.0;
  // |t| < tmin: g(t) = (2 pi t)^k D_k up to a factor in [(1 - x^2/6)^k, 1], x = pi max_off tmin
  const double near = 2.0 * std::pow(std::pow(twopi, k) * Dk, p) * std::pow(tmin, (k - r) * p) / ((k - r) * p);
  const double x = std::numbers::pi * static_cast<double>(max_off) * tmin;
  const double near_rel = 1.0 - std::pow(std::max(0.0, 1.0 - x * x / 6.0), k * p);
  total += near;
  est.value = std::pow(total, 1.0 / p);
  const double dvalue = total > 0.0 ? std::pow(total, 1.0 / p - 1.0) / p : 0.0;
  est.quadrature_error = dvalue * err;
  est.tail_bound = dvalue * near * near_rel + g_trunc * std::pow(2.0 * std::pow(tmin, -r * p) / (r * p), 1.0 / p);
  return est;
}

/// F(x) = int_0^x (cos 2 pi u - 1) u^{-r} du, tabulated on unit intervals.
class HypersingularKernel {
 public:
  HypersingularKernel(double r, long max_x) : r_(r), cum_(static_cast<std::size_t>(max_x + 2), 0.0) {
    for (long n = 0; n <= max_x; ++n)
      cum_[static_cast<std::size_t>(n + 1)] = cum_[static_cast<std::size_t>(n)] + piece(static_cast<double>(n), static_cast<double>(n + 1));
  }

  double operator()(double x) const {
    if (x < 0.0) throw ParameterError("HypersingularKernel: negative argument");
    const long n = static_cast<long>(std::floor(x));
    if (static_cast<std::size_t>(n + 1) >= cum_.size()) throw ParameterError("HypersingularKernel: argument beyond table");
    if (x == static_cast<double>(n)) return cum_[static_cast<std::size_t>(n)];
    return cum_[static_cast<std::size_t>(n)] + piece(static_cast<double>(n), x);
  }

  /// I_m(eps) = int_{eps<=|t|<=1} (e^{2 pi i m t} - 1) |t|^{-r} dt = 2 |m|^{r-1} (F(|m|) - F(|m| eps)).
  double multiplier(long m, double eps) const {
    if (m == 0) return 0.0;
    const double am = std::abs(static_cast<double>(m));
    return 2.0 * std::pow(am, r_ - 1.0) * ((*this)(am) - (*this)(am * eps));
  }

  double error() const { return err_; }

 private:
  // int_a^b; near 0 the integrand behaves like u^{2-r}, so split dyadically
  // and use the two leading Taylor terms below 1e-4
  double piece(double a, double b) const {
    BesovOptions opt;
    opt.rel_tol = 1e-14;
    double total = 0.0;
    if (a == 0.0) {
      double hi = b;
      while (hi > 1e-4) {
        const double lo = hi / 2.0;
        auto [v, e] = detail::gk_integrate([&](double u) { return integrand(u); }, lo, hi, opt);
        total += v;
        err_ += e;
        hi = lo;
      }
      const double c = 2.0 * std::numbers::pi * std::numbers::pi;
      total += -c * std::pow(hi, 3.0 - r_) / (3.0 - r_) + c * c / 6.0 * std::pow(hi, 5.0 - r_) / (5.0 - r_);
      return total;
    }
    // a is an integer here; work in the cell variable so sin(pi u) carries no rounding
    auto [v, e] = detail::gk_integrate(
        [&](double u) {
          const double s = std::sin(std::numbers::pi * u);
          return -2.0 * s * s * std::pow(a + u, -r_);
        },
        0.0, b - a, opt);
    err_ += e;
    return v;
  }

  double integrand(double u) const {
    if (u == 0.0) return 0.0;
    // cos(2 pi u) - 1 = -2 sin^2(pi u)
    const double s = std::sin(std::numbers::pi * u);
    return -2.0 * s * s * std::pow(u, -r_);
  }

  double r_;
  std::vector<double> cum_;
  mutable double err_ = 0.0;
};

/// sup over eps in eps_grid of || int_{eps<=|t|<=1} Delta_t(A) / |t|^r dt ||, 0 < r < 2.
inline SeminormEstimate hypersingular_seminorm(const LatticeMatrix& a, double r, const std::vector<double>& eps_grid,
                                               const Ambient& amb = Ambient::c0()) {
  if (!(r > 0.0 && r < 2.0)) throw ParameterError("hypersingular_seminorm: r must lie in (0, 2)");
  if (eps_grid.empty()) throw ParameterError("hypersingular_seminorm: empty eps grid");
  for (double e : eps_grid)
    if (!(e > 0.0 && e < 1.0)) throw ParameterError("hypersingular_seminorm: eps must lie in (0, 1)");

  SeminormEstimate est;
  est.p = kInf;
  est.r = r;
  est.k = 1;
  est.ambient = amb;

  if (amb.kind != Ambient::Kind::Operator) {
    const WeightedOffsets wo = weighted_offsets(diagonal_profile(a), amb);
    long max_off = 0;
    for (long m : wo.offsets) max_off = std::max(max_off, std::abs(m));
    const HypersingularKernel F(r, max_off);
    for (double eps : eps_grid) {
      const double v = wo.combine([&](long m) { return std::abs(F.multiplier(m, eps)); });
      est.value = std::max(est.value, v);
    }
    est.quadrature_error = F.error() * 2.0 * std::pow(static_cast<double>(std::max(max_off, 1L)), r - 1.0) *
                           wo.combine([](long) { return 1.0; });
    // omitted offsets: |I_m(eps)| <= 2 int_eps^1 2 t^{-r} dt
    const double bound = r == 1.0 ? 4.0 * std::log(1.0 / *std::min_element(eps_grid.begin(), eps_grid.end()))
                                  : 4.0 * std::abs(1.0 - std::pow(*std::min_element(eps_grid.begin(), eps_grid.end()), 1.0 - r)) /
                                        std::abs(1.0 - r);
    est.tail_bound = wo.tail * bound;
    return est;
  }

  const IndexWindow w = a.window();
  const long n = w.size();
  const HypersingularKernel F(r, n);
  for (double eps : eps_grid) {
    CMatrix m(n, n);
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j) m(i, j) = F.multiplier(i - j, eps) * a.entries()(i, j);
    est.value = std::max(est.value, operator_norm_l2(LatticeMatrix(w, std::move(m))));
  }
  est.quadrature_error = F.error() * 2.0 * std::pow(static_cast<double>(n), std::abs(r - 1.0)) * operator_norm_l2(a);
  return est;
}

struct IdentificationReport {
  std::vector<double> params;
  std::vector<double> seminorms;
  std::vector<double> norms;
  std::vector<double> ratios;
  double min_ratio = kInf;
  double max_ratio = 0.0;
  bool bounded = false;  ///< all ratios finite and positive
};

/// besov_seminorm(A, p = 1, r, C_0) / ||A||_{C_r} across a family.
inline IdentificationReport identification_rate_check(const std::vector<double>& params,
                                                      const std::vector<LatticeMatrix>& family, double r,
                                                      const BesovOptions& opt = {}) {
  if (params.size() != family.size()) throw ParameterError("identification_rate_check: size mismatch");
  IdentificationReport rep;
  rep.params = params;
  rep.bounded = !family.empty();
  for (const auto& a : family) {
    const double s = besov_seminorm(a, 1.0, r, std::nullopt, Ambient::c0(), opt).value;
    const double n = cv_norm(a, Weight::polynomial(r));
    rep.seminorms.push_back(s);
    rep.norms.push_back(n);
    const double q = s / n;
    rep.ratios.push_back(q);
    rep.min_ratio = std::min(rep.min_ratio, q);
    rep.max_ratio = std::max(rep.max_ratio, q);
    if (!(q > 0.0) || !std::isfinite(q)) rep.bounded = false;
  }
  return rep;
}

}  // namespace decayinv
