#include <catch_amalgamated.hpp>

#include "decayinv/quotient_rules.hpp"
#include "oracles.hpp"

using namespace decayinv;
using Catch::Matchers::WithinAbs;

namespace {

const IndexWindow kW(-16, 16);
constexpr long kMargin = 8;

/// (k-l)^j M(k,l), written out entrywise.
CMatrix weight_entries(const CMatrix& m, int j) {
  CMatrix out = m;
  for (long i = 0; i < m.rows(); ++i)
    for (long c = 0; c < m.cols(); ++c) out(i, c) *= std::pow(static_cast<double>(i - c), j);
  return out;
}

/// (e^{2 pi i (k-l) t} - 1)^j M(k,l), written out entrywise.
CMatrix difference_entries(const CMatrix& m, double t, int j) {
  CMatrix out = m;
  for (long i = 0; i < m.rows(); ++i)
    for (long c = 0; c < m.cols(); ++c)
      out(i, c) *= std::pow(std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(i - c) * t) - 1.0, j);
  return out;
}

LatticeMatrix dense_inverse(const LatticeMatrix& a) {
  return LatticeMatrix(a.window(), a.entries().fullPivLu().inverse());
}

}  // namespace

TEST_CASE("verify_identity") {
  auto a = oracle::random_matrix(kW, 3);
  auto e = verify_identity(a, a, kMargin);
  CHECK(e.max_abs_err == 0.0);
  CHECK(e.max_rel_err == 0.0);
  CMatrix p = a.entries();
  p(16, 16) += 1e-12;
  p(0, 0) += 1.0;  // outside the inner window
  auto d = verify_identity(a, LatticeMatrix(kW, p), kMargin);
  CHECK_THAT(d.max_abs_err, WithinAbs(1e-12, 1e-16));
  auto z = LatticeMatrix::zero(kW);
  CHECK(verify_identity(z, z, 2).max_rel_err == 0.0);
  CHECK_THROWS_AS(verify_identity(a, a, 17), ParameterError);
  CHECK_THROWS_AS(verify_identity(a, LatticeMatrix::zero(IndexWindow(0, 4)), 1), ParameterError);
}

TEST_CASE("derivation_quotient_rhs low orders") {
  auto a = oracle::random_decay_matrix(kW, 0.3, 2.0, 11);
  const CMatrix inv = a.entries().inverse();
  const CMatrix d1 = weight_entries(a.entries(), 1), d2 = weight_entries(a.entries(), 2);
  const CMatrix k1 = -inv * d1 * inv;
  const CMatrix k2 = -inv * d2 * inv + 2.0 * inv * d1 * inv * d1 * inv;
  CHECK(verify_identity(derivation_quotient_rhs(a, 1), LatticeMatrix(kW, k1), 0).max_rel_err < 1e-13);
  CHECK(verify_identity(derivation_quotient_rhs(a, 2), LatticeMatrix(kW, k2), 0).max_rel_err < 1e-13);
}

TEST_CASE("quotient rules against direct computation") {
  const IndexWindow w(-24, 23);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const double eps = 0.05 + 0.25 * static_cast<double>(seed % 6) / 5.0;
    auto a = oracle::random_decay_matrix(w, eps, 2.0, seed);
    const LatticeMatrix inv = dense_inverse(a);
    for (int k = 1; k <= 5; ++k) {
      const LatticeMatrix direct(w, weight_entries(inv.entries(), k));
      CHECK(verify_identity(derivation_quotient_rhs(a, k), direct, 12).max_rel_err <= 1e-10);
      for (double t : {0.1, 0.37}) {
        const LatticeMatrix ddirect(w, difference_entries(inv.entries(), t, k));
        CHECK(verify_identity(difference_quotient_rhs(a, t, k), ddirect, 12).max_rel_err <= 1e-10);
      }
    }
  }
}

TEST_CASE("difference_quotient_rhs k = 1 form") {
  auto a = oracle::random_decay_matrix(kW, 0.3, 1.5, 4);
  const double t = 0.21;
  const CMatrix inv = a.entries().inverse();
  CMatrix shifted = inv;
  for (long i = 0; i < inv.rows(); ++i)
    for (long c = 0; c < inv.cols(); ++c)
      shifted(i, c) *= std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(i - c) * t);
  const CMatrix want = -shifted * difference_entries(a.entries(), t, 1) * inv;
  CHECK(verify_identity(difference_quotient_rhs(a, t, 1), LatticeMatrix(kW, want), 0).max_rel_err < 1e-13);
}

TEST_CASE("difference_quotient_rhs on diagonal operands") {
  auto d = LatticeMatrix::diagonal(kW, [](long k) { return cplx(2.0 + 0.1 * k, 0.3); });
  for (int k = 1; k <= 4; ++k) {
    CHECK(difference_quotient_rhs(d, 0.3, k).entries().cwiseAbs().maxCoeff() < 1e-14);
    CHECK(derivation_quotient_rhs(d, k).entries().cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("difference_product_rhs") {
  auto a = oracle::random_matrix(kW, 21), b = oracle::random_matrix(kW, 22);
  const double t = 0.37;
  CMatrix psi_a = a.entries();
  for (long i = 0; i < psi_a.rows(); ++i)
    for (long c = 0; c < psi_a.cols(); ++c)
      psi_a(i, c) *= std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(i - c) * t);
  const CMatrix k1 = psi_a * difference_entries(b.entries(), t, 1) + difference_entries(a.entries(), t, 1) * b.entries();
  CHECK(verify_identity(difference_product_rhs(a, b, t, 1), LatticeMatrix(kW, k1), 0).max_rel_err < 1e-13);

  const CMatrix ab = a.entries() * b.entries();
  for (int k = 1; k <= 4; ++k) {
    const LatticeMatrix direct(kW, difference_entries(ab, t, k));
    CHECK(verify_identity(difference_product_rhs(a, b, t, k), direct, kMargin).max_rel_err <= 1e-10);
    const LatticeMatrix dk(kW, difference_entries(a.entries(), t, k));
    CHECK(verify_identity(difference_product_rhs(a, LatticeMatrix::identity(kW), t, k), dk, 0).max_rel_err < 1e-13);
  }
  CHECK_THROWS_AS(difference_product_rhs(a, LatticeMatrix::zero(IndexWindow(0, 3)), t, 1), ParameterError);
}

TEST_CASE("telescoping and Leibniz") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto a = oracle::random_decay_matrix(kW, 0.3, 2.0, seed);
    for (int k = 1; k <= 5; ++k) {
      auto s = telescoping_sum(a, 0.23, k);
      CHECK(s.entries().cwiseAbs().maxCoeff() <= 1e-10 * std::pow(2.0, k));
    }
  }
  auto a = oracle::random_matrix(kW, 1), b = oracle::random_matrix(kW, 2);
  const CMatrix lhs = weight_entries(a.entries() * b.entries(), 1);
  const CMatrix rhs = a.entries() * weight_entries(b.entries(), 1) + weight_entries(a.entries(), 1) * b.entries();
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("composition counts feeding the sums") {
  for (int k = 1; k <= 8; ++k) {
    std::size_t total = 0;
    for (int m = 1; m <= k; ++m) total += compositions(k, m).size();
    CHECK(total == (std::size_t{1} << (k - 1)));
  }
}

TEST_CASE("quotient rule order cap and singular input") {
  auto a = oracle::random_decay_matrix(kW, 0.2, 2.0, 1);
  CHECK_NOTHROW(derivation_quotient_rhs(a, 8));
  CHECK_THROWS_AS(derivation_quotient_rhs(a, 9), ParameterError);
  CHECK_THROWS_AS(difference_quotient_rhs(a, 0.1, 0), ParameterError);
  CHECK_NOTHROW(derivation_quotient_rhs(a, 9, 9));
  CHECK_THROWS_AS(derivation_quotient_rhs(LatticeMatrix::zero(kW), 1), SingularityError);
  CHECK_THROWS_AS(difference_quotient_rhs(LatticeMatrix::zero(kW), 0.1, 1), SingularityError);
}
