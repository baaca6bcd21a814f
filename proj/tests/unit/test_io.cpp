#include <catch_amalgamated.hpp>

#include <sstream>

#include "decayinv/io.hpp"
#include "oracles.hpp"

using namespace decayinv;

TEST_CASE("format_number round trips") {
  for (double x : {0.0, 1.0, -2.5, 0.1, 1.0 / 3.0, 1e-300, 6.02214076e23, std::nextafter(1.0, 2.0)}) {
    const std::string s = format_number(x);
    CHECK(std::stod(s) == x);
  }
  CHECK(format_number(kNaN) == "nan");
  CHECK(format_number(-kInf) == "-inf");
}

TEST_CASE("CSV round trip is lossless") {
  Table t;
  t.columns = {"name", "k", "x"};
  t.add_row({std::string("plain"), std::int64_t{3}, 0.1});
  t.add_row({std::string("with, comma \"q\""), std::int64_t{-7}, 1.0});
  t.add_row({std::string("42"), std::int64_t{0}, kInf});
  t.add_row({std::string(""), std::int64_t{1} << 40, -1e-310});
  const std::string text = to_csv(t);
  Table back = table_from_csv(text);
  CHECK(back == t);
  CHECK(text.substr(0, 9) == "name,k,x\n");
  // NaN never compares equal; check it separately
  Table n;
  n.columns = {"v"};
  n.add_row({kNaN});
  CHECK(std::isnan(std::get<double>(table_from_csv(to_csv(n)).rows[0][0])));
  CHECK_THROWS_AS(table_from_csv("a,b\n1,2,3\n"), ParameterError);
  CHECK_THROWS_AS(table_from_csv("a\n\"open\n"), ParameterError);
  CHECK_THROWS_AS(table_from_csv("a\nx1\n"), ParameterError);
}

TEST_CASE("experiment tables round trip through CSV and JSON") {
  ExperimentConfig c;
  c.window_N = 32;
  c.num_seeds = 2;
  c.k_max = 2;
  auto res = run_quotient_verify(c);
  // NaN t entries of the derivation rows survive the trip
  CHECK(table_from_csv(to_csv(res.table)) == res.table);
  CHECK(table_from_json(json::parse(to_json(res.table).dump())) == res.table);
  auto ts = run_toeplitz_sharpness(ExperimentConfig{});
  CHECK(table_from_csv(to_csv(ts.table)) == ts.table);
  CHECK(table_from_json(json::parse(to_json(ts.table).dump())) == ts.table);
  const json j = to_json(ts);
  CHECK(j.at("experiment") == "toeplitz-sharpness");
  CHECK(j.at("fits").contains("r=1"));
  CHECK(j.at("reports").size() == ts.reports.size());
}

TEST_CASE("BoundReport JSON") {
  auto rep = explicit_bound_Cr(1.0, 1.0, 10.0, 1.0);
  rep.set_measured(2.0);
  const json j = json::parse(to_json(rep).dump());
  CHECK(j.at("bound_name") == "explicit_Cr");
  CHECK(j.at("satisfied") == true);
  CHECK(j.at("inputs").at("norm_Ainv_op") == 10.0);
  CHECK(j.at("log_bound").get<double>() == rep.log_bound);
  CHECK(j.at("intermediates").contains("log_C_r"));
  auto sym = besov_bound(2.0, 1.0, 0.5, 1.0);
  const json s = to_json(sym);
  CHECK(s.at("satisfied").is_null());
  CHECK(s.at("symbolic_constant") == true);
  auto dd = dales_davie_bound(0.1, [](int) { return 1.0; }, 50);
  const json d = to_json(dd);
  CHECK(d.at("bound_value") == "inf");
  CHECK(d.at("inconclusive") == true);

  Table rows = bound_rows({{"gamma=0.5", rep}, {"sym", sym}});
  CHECK(rows.number(0, "satisfied") == 1.0);
  CHECK(rows.number(1, "satisfied") == -1.0);
  CHECK(table_from_csv(to_csv(rows)).rows.size() == 2);
}

TEST_CASE("Weight and SmoothnessSequence JSON") {
  for (const Weight& w : {Weight::polynomial(1.5), Weight::subexp(2.0), Weight::subexp(1.0, 4),
                          Weight::table({{-1, 2.0}, {0, 1.0}, {3, 5.5}})}) {
    const Weight b = weight_from_json(json::parse(to_json(w).dump()));
    CHECK(b.kind() == w.kind());
    for (long k : {0L, 3L}) {
      if (w.kind() == Weight::Kind::table && k == 0) continue;
      CHECK(b.log_value(k) == w.log_value(k));
    }
  }
  CHECK(to_json(Weight::polynomial(2.0)) == json{{"kind", "polynomial"}, {"r", 2.0}});
  for (const auto& s : {SmoothnessSequence::finite(3), SmoothnessSequence::analytic(), SmoothnessSequence::gevrey(2.5),
                        SmoothnessSequence::custom({1.0, 2.0, 8.0})}) {
    const auto b = sequence_from_json(to_json(s));
    CHECK(b.kind() == s.kind());
    CHECK(b.log_M(2) == s.log_M(2));
  }
  CHECK_THROWS_AS(weight_from_json(json{{"kind", "bogus"}}), ParameterError);
}

TEST_CASE("SeminormEstimate JSON") {
  BesovOptions o;
  o.keep_trace = true;
  auto e = besov_seminorm(shift(2, IndexWindow(-8, 8)), 1.0, 0.5, std::nullopt, Ambient::c0(), o);
  const json j = to_json(e);
  CHECK(j.at("value").get<double>() == e.value);
  CHECK(j.at("trace").size() == e.trace.size());
  CHECK(j.at("k") == 1);
}

TEST_CASE("ExperimentConfig JSON") {
  ExperimentConfig c;
  c.experiment = "dd-sharpness";
  c.gamma_grid = {0.5, 0.25};
  c.tolerances["slope"] = 0.2;
  c.format = OutputFormat::json;
  c.m_list = {3};
  const ExperimentConfig b = config_from_json(json::parse(to_json(c).dump()));
  CHECK(b.experiment == c.experiment);
  CHECK(b.gamma_grid == c.gamma_grid);
  CHECK(b.tolerance("slope", 0.0) == 0.2);
  CHECK(b.format == OutputFormat::json);
  CHECK(b.m_list == c.m_list);
  const ExperimentConfig partial = config_from_json(json{{"window_N", 40}});
  CHECK(partial.window_N == 40);
  CHECK(partial.gamma_grid == ExperimentConfig{}.gamma_grid);
  CHECK_THROWS_AS(config_from_json(json{{"windw", 3}}), ParameterError);
  CHECK_THROWS_AS(config_from_json(json{{"window_N", "big"}}), ParameterError);
  CHECK_THROWS_AS(config_from_json(json{{"output", {{"format", "xml"}}}}), ParameterError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ParameterError);
}

TEST_CASE("Matrix Market round trip") {
  const IndexWindow w(-5, 6);
  auto a = oracle::random_matrix(w, 9);
  std::stringstream ss;
  write_matrix_market(a, ss);
  auto b = read_matrix_market(ss);
  CHECK(b.window() == w);
  CHECK(b.entries() == a.entries());

  std::stringstream sparse;
  write_matrix_market(c_gamma(0.3, w), sparse);
  CHECK(sparse.str().find("12 12 23") != std::string::npos);
  CHECK(read_matrix_market(sparse).entries() == c_gamma(0.3, w).entries());

  std::stringstream plain("%%MatrixMarket matrix coordinate real general\n2 2 1\n2 1 4.5\n");
  auto p = read_matrix_market(plain);
  CHECK(p.window() == IndexWindow(0, 1));
  CHECK(p(1, 0) == cplx(4.5, 0.0));
  std::stringstream bad("%%MatrixMarket matrix array complex general\n");
  CHECK_THROWS_AS(read_matrix_market(bad), ParameterError);
  std::stringstream trunc("%%MatrixMarket matrix coordinate complex general\n2 2 2\n1 1 1 0\n");
  CHECK_THROWS_AS(read_matrix_market(trunc), ParameterError);
}

TEST_CASE("matrix JSON descriptor") {
  const IndexWindow w(-4, 4);
  auto g = oracle::random_matrix(w, 2);
  auto gb = matrix_from_json(json::parse(to_json(g).dump()));
  CHECK(gb.entries() == g.entries());
  CHECK(gb.symbol() == nullptr);

  auto t = c_gamma(0.7, w);
  const json tj = to_json(t);
  CHECK(tj.at("tag") == "toeplitz");
  auto tb = matrix_from_json(json::parse(tj.dump()));
  REQUIRE(tb.symbol() != nullptr);
  CHECK(tb.entries() == t.entries());

  auto d = LatticeMatrix::diagonal(w, [](long k) { return 1.0 + k; });
  auto db = matrix_from_json(to_json(d));
  CHECK(db.bandwidth() == std::optional<long>(0));
  CHECK_THROWS_AS(matrix_from_json(json{{"window", {0, 1}}, {"entries", json::array()}}), ParameterError);
}
