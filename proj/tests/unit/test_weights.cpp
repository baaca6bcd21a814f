#include <catch_amalgamated.hpp>

#include "decayinv/norms.hpp"
#include "decayinv/weights.hpp"
#include "oracles.hpp"

using namespace decayinv;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("weight values") {
  auto p = Weight::polynomial(2.0);
  CHECK(p(0) == 1.0);
  CHECK_THAT(p(-3), WithinRel(16.0, 1e-15));

  auto s = Weight::subexp(2.0);
  CHECK(s(0) == 1.0);
  CHECK_THAT(s(5), WithinRel(oracle::phi(2.0, 5.0), 1e-14));
  CHECK_THAT(s(-40), WithinRel(oracle::phi(2.0, 40.0), 1e-13));

  auto st = Weight::subexp(1.0, 2);
  CHECK_THAT(st(3), WithinRel(1.0 + 3.0 + 4.5, 1e-15));

  auto t = Weight::table({{0, 1.0}, {1, 2.0}});
  CHECK(t(1) == 2.0);
  CHECK_THROWS_AS(t(2), ParameterError);
  CHECK_THROWS_AS(Weight::table({{0, -1.0}}), ParameterError);
  CHECK_THROWS_AS(Weight::subexp(0.0), ParameterError);
}

TEST_CASE("log_phi against forward recursion") {
  for (double s : {0.5, 1.0, 1.5, 2.0, 3.0})
    for (double x : {0.0, 0.3, 1.0, 7.0, 50.0, 400.0}) {
      if (s < 1.0 && x > 50.0) continue;
      CHECK_THAT(log_phi(s, x), WithinAbs(std::log(oracle::phi(s, x)), 1e-13 * std::max(1.0, std::log(oracle::phi(s, x)))));
    }
  CHECK_THAT(log_phi(1.0, 1e5), WithinRel(1e5, 1e-14));
  CHECK_THROWS_AS(log_phi(0.0, 1.0), ParameterError);
  CHECK_THROWS_AS(log_phi(1.0, -1.0), ParameterError);
}

TEST_CASE("phi_r_eval") {
  CHECK(phi_r_eval(2.0, 0.0).value == 1.0);
  CHECK_THAT(phi_r_eval(1.0, 2.0).value, WithinRel(std::exp(2.0), 1e-15));
  // type r: slope of log phi_r(x) against x^{1/r}
  const double xs[] = {1e2, 1e3, 1e4};
  for (int i = 0; i < 2; ++i) {
    const double slope = (phi_r_eval(2.0, xs[i + 1]).log_value - phi_r_eval(2.0, xs[i]).log_value) /
                         (std::sqrt(xs[i + 1]) - std::sqrt(xs[i]));
    CHECK_THAT(slope, WithinRel(2.0, 0.1));
  }
  CHECK_THAT(phi_r_eval(2.0, 1e4).order_type_ratio, WithinRel(2.0, 0.1));
  try {
    phi_r_eval(1.0, 1000.0);
    FAIL("expected RangeError");
  } catch (const RangeError& e) {
    CHECK_THAT(e.log_value(), WithinRel(1000.0, 1e-14));
  }
}

TEST_CASE("check_weight") {
  auto p = check_weight(Weight::polynomial(1.5), 20);
  CHECK(p.submultiplicative);
  CHECK(p.grs_trend.back().second < p.grs_trend.front().second);

  auto s = check_weight(Weight::subexp(2.0), 30);
  CHECK(s.submultiplicative);
  CHECK(s.grs_trend.back().second < 1.5);

  std::map<long, double> tab;
  for (long k = -64; k <= 64; ++k) tab[k] = std::pow(2.0, std::abs(static_cast<double>(k)));
  auto e = check_weight(Weight::table(tab), 32);
  CHECK(e.submultiplicative);
  CHECK_THAT(e.grs_trend.back().second, WithinRel(2.0, 1e-14));

  std::map<long, double> bad;
  for (long k = -8; k <= 8; ++k) bad[k] = k == 2 || k == -2 ? 100.0 : 1.0;
  CHECK_FALSE(check_weight(Weight::table(bad), 4).submultiplicative);
}

TEST_CASE("smoothness sequences") {
  auto g = SmoothnessSequence::gevrey(2.0);
  CHECK(g.M(0) == 1.0);
  CHECK_THAT(g.M(4), WithinRel(576.0, 1e-13));
  CHECK(g.admissible(30));
  CHECK(SmoothnessSequence::analytic().admissible(30));
  CHECK(SmoothnessSequence::finite(3).admissible(10));
  CHECK(SmoothnessSequence::finite(3).M(4) == kInf);

  // M_k = 1 violates M_{k+l}/(k+l)! >= (M_k/k!)(M_l/l!)
  CHECK_FALSE(SmoothnessSequence::custom({1.0, 1.0, 1.0, 1.0}).admissible(3));
  CHECK_THROWS_AS(SmoothnessSequence::custom({2.0}), ParameterError);
  CHECK_THROWS_AS(SmoothnessSequence::custom({1.0, 1.0}).M(5), ParameterError);
}

TEST_CASE("A_m from brute force matches the Gevrey closed form") {
  for (double r : {1.5, 2.0, 3.0})
    for (int m = 1; m <= 5; ++m) {
      const double want = std::exp((1.0 - r) * std::log(static_cast<double>(oracle::factorial(m))) / m);
      CHECK_THAT(a_m_bruteforce(SmoothnessSequence::gevrey(r), m, 15).value, WithinAbs(want, 1e-12));
      CHECK_THAT(a_m_gevrey(r, m), WithinAbs(want, 1e-14));
    }
  CHECK_THAT(a_m_gevrey(2.0, 3), WithinRel(std::pow(6.0, -1.0 / 3.0), 1e-14));
  CHECK_THAT(a_m_bruteforce(SmoothnessSequence::gevrey(2.0), 2, 15).value, WithinRel(std::sqrt(0.5), 1e-14));
  for (int m = 1; m <= 6; ++m) {
    CHECK_THAT(a_m_bruteforce(SmoothnessSequence::analytic(), m, 12).value, WithinRel(1.0, 1e-14));
    CHECK(a_m_gevrey(1.0, m) == 1.0);
  }
  CHECK_THROWS_AS(a_m_bruteforce(SmoothnessSequence::gevrey(2.0), 5, 4), ParameterError);
}

TEST_CASE("A_m is at most one and nonincreasing for admissible sequences") {
  std::vector<SmoothnessSequence> seqs{SmoothnessSequence::gevrey(1.3), SmoothnessSequence::gevrey(2.5),
                                       SmoothnessSequence::analytic(), SmoothnessSequence::finite(6)};
  std::vector<double> custom{1.0};
  for (int k = 1; k <= 12; ++k) custom.push_back(custom.back() * k * std::sqrt(static_cast<double>(k)) * 1.1);
  seqs.push_back(SmoothnessSequence::custom(custom));
  for (const auto& M : seqs) {
    REQUIRE(M.admissible(12));
    double prev = kInf;
    for (int m = 1; m <= 6; ++m) {
      const double a = a_m_bruteforce(M, m, 12).value;
      CHECK(a <= 1.0 + 1e-12);
      CHECK(a <= prev + 1e-12);
      prev = a;
    }
  }
}
