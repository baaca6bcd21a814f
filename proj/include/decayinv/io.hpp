#pragma once

// CSV and JSON forms of tables, reports, weights and configurations, and
// Matrix Market / JSON descriptors for lattice matrices.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "decayinv/besov.hpp"
#include "decayinv/bounds.hpp"
#include "decayinv/errors.hpp"
#include "decayinv/experiments.hpp"
#include "decayinv/lattice_matrix.hpp"
#include "decayinv/weights.hpp"

namespace decayinv {

using json = nlohmann::json;

// ---------------------------------------------------------------- scalars

/// Non-finite doubles become the strings "nan", "inf", "-inf".
inline json number_to_json(double x) {
  if (std::isfinite(x)) return x;
  return format_number(x);
}

inline double number_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "nan") return kNaN;
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  if (j.is_null()) return kNaN;
  throw ParameterError("expected a number, got " + j.dump());
}

inline json map_to_json(const std::map<std::string, double>& m) {
  json out = json::object();
  for (const auto& [k, v] : m) out[k] = number_to_json(v);
  return out;
}

// ---------------------------------------------------------------- CSV

namespace detail {

/// Doubles always carry a '.', exponent or non-finite spelling so that they
/// read back as doubles and not integers.
inline std::string csv_double(double x) {
  std::string s = format_number(x);
  if (s.find_first_of(".eEni") == std::string::npos) s += ".0";
  return s;
}

inline std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::vector<std::pair<std::string, bool>> csv_split(const std::string& line) {
  std::vector<std::pair<std::string, bool>> out;  // (text, was_quoted)
  std::string cur;
  bool quoted = false, in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_quotes) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        in_quotes = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      in_quotes = quoted = true;
    } else if (c == ',') {
      out.emplace_back(cur, quoted);
      cur.clear();
      quoted = false;
    } else {
      cur += c;
    }
  }
  if (in_quotes) throw ParameterError("CSV: unterminated quote");
  out.emplace_back(cur, quoted);
  return out;
}

inline Cell csv_cell(const std::string& text, bool quoted) {
  if (quoted) return text;
  if (text.find_first_of(".eEni") == std::string::npos) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec == std::errc() && p == text.data() + text.size()) return v;
  }
  if (text == "nan") return kNaN;
  if (text == "inf") return kInf;
  if (text == "-inf") return -kInf;
  double d = 0.0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), d);
  if (ec == std::errc() && p == text.data() + text.size()) return d;
  throw ParameterError("CSV: unparsable cell '" + text + "'");
}

}  // namespace detail

/// Header line of column names, then one line per row. Strings are always
/// quoted, integers are bare, doubles are shortest round-trip decimals.
inline void write_csv(const Table& t, std::ostream& os) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) os << detail::csv_double(v);
            else if constexpr (std::is_same_v<T, std::int64_t>) os << v;
            else os << detail::csv_quote(v);
          },
          row[i]);
    }
    os << '\n';
  }
}

inline std::string to_csv(const Table& t) {
  std::ostringstream os;
  write_csv(t, os);
  return os.str();
}

inline Table read_csv(std::istream& is) {
  Table t;
  std::string line;
  if (!std::getline(is, line)) throw ParameterError("CSV: missing header");
  for (auto& [name, q] : detail::csv_split(line)) t.columns.push_back(name);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<Cell> row;
    for (auto& [text, q] : detail::csv_split(line)) row.push_back(detail::csv_cell(text, q));
    t.add_row(std::move(row));
  }
  return t;
}

inline Table table_from_csv(const std::string& text) {
  std::istringstream is(text);
  return read_csv(is);
}

// ---------------------------------------------------------------- tables and results

inline json cell_to_json(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) return number_to_json(*d);
  if (const std::int64_t* i = std::get_if<std::int64_t>(&c)) return *i;
  return std::get<std::string>(c);
}

inline json to_json(const Table& t) {
  json rows = json::array();
  for (const auto& row : t.rows) {
    json r = json::array();
    for (const auto& c : row) r.push_back(cell_to_json(c));
    rows.push_back(std::move(r));
  }
  return {{"columns", t.columns}, {"rows", std::move(rows)}};
}

/// Inverse of to_json(Table); the strings "nan", "inf", "-inf" read back as doubles.
inline Table table_from_json(const json& j) {
  Table t;
  t.columns = j.at("columns").get<std::vector<std::string>>();
  for (const auto& r : j.at("rows")) {
    std::vector<Cell> row;
    for (const auto& c : r) {
      if (c.is_number_integer()) row.emplace_back(c.get<std::int64_t>());
      else if (c.is_number()) row.emplace_back(c.get<double>());
      else if (c.is_null()) row.emplace_back(kNaN);
      else {
        const std::string s = c.get<std::string>();
        if (s == "nan" || s == "inf" || s == "-inf") row.emplace_back(number_from_json(c));
        else row.emplace_back(s);
      }
    }
    t.add_row(std::move(row));
  }
  return t;
}

inline json to_json(const SlopeFit& f) {
  json pts = json::array();
  for (auto [x, y] : f.points) pts.push_back({number_to_json(x), number_to_json(y)});
  return {{"points", pts},
          {"slope", number_to_json(f.slope)},
          {"intercept", number_to_json(f.intercept)},
          {"residual", number_to_json(f.residual)}};
}

/// Stable field names; A_m as in the paper.
inline json to_json(const BoundReport& r) {
  json out{{"bound_name", r.bound_name},
           {"inputs",
            {{"norm_A_alg", number_to_json(r.inputs.norm_A_alg)},
             {"norm_A_op", number_to_json(r.inputs.norm_A_op)},
             {"norm_Ainv_op", number_to_json(r.inputs.norm_Ainv_op)},
             {"r", number_to_json(r.inputs.r)},
             {"auxiliary", map_to_json(r.inputs.auxiliary)}}},
           {"intermediates", map_to_json(r.intermediates)},
           {"A_m", json::array()},
           {"log_bound", number_to_json(r.log_bound)},
           {"bound_value", number_to_json(r.bound_value)},
           {"rate_exponent", number_to_json(r.rate_exponent)},
           {"symbolic_constant", r.symbolic_constant},
           {"inconclusive", r.inconclusive},
           {"measured_value", r.measured_value ? number_to_json(*r.measured_value) : json(nullptr)},
           {"measured_error", number_to_json(r.measured_error)},
           {"satisfied", r.satisfied ? json(*r.satisfied) : json(nullptr)}};
  for (double a : r.a_m) out["A_m"].push_back(number_to_json(a));
  return out;
}

/// CSV row form for sweeps: family_param, r, bound, measured, ratio, satisfied.
inline Table bound_rows(const std::vector<std::pair<std::string, BoundReport>>& reps) {
  Table t;
  t.columns = {"family_param", "r", "bound", "measured", "ratio", "satisfied"};
  for (const auto& [label, r] : reps) {
    const double m = r.measured_value.value_or(kNaN);
    auto it = r.intermediates.find("measured_over_bound");
    const std::int64_t sat = r.satisfied ? (*r.satisfied ? 1 : 0) : -1;
    t.add_row({label, r.inputs.r, r.bound_value, m, it == r.intermediates.end() ? kNaN : it->second, sat});
  }
  return t;
}

inline json to_json(const SeminormEstimate& e) {
  json shells = json::array();
  for (const auto& s : e.trace)
    shells.push_back({{"lo", s.lo}, {"hi", s.hi}, {"contribution", s.contribution}, {"error", s.error}});
  return {{"value", number_to_json(e.value)},
          {"quadrature_error", number_to_json(e.quadrature_error)},
          {"tail_bound", number_to_json(e.tail_bound)},
          {"p", number_to_json(e.p)},
          {"r", e.r},
          {"k", e.k},
          {"ambient", e.ambient.name()},
          {"trace", shells}};
}

inline json to_json(const ExperimentResult& r) {
  json fits = json::object();
  for (const auto& [label, f] : r.fits) fits[label] = to_json(f);
  json reps = json::array();
  for (const auto& b : r.reports) reps.push_back(to_json(b));
  return {{"experiment", r.experiment},
          {"all_satisfied", r.all_satisfied},
          {"table", to_json(r.table)},
          {"fits", fits},
          {"notes", r.notes},
          {"reports", reps}};
}

// ---------------------------------------------------------------- weights

inline json to_json(const Weight& w) {
  json out{{"kind", w.kind_name()}};
  if (w.kind() == Weight::Kind::table) {
    json tab = json::object();
    for (const auto& [k, v] : w.values()) tab[std::to_string(k)] = v;
    out["table"] = tab;
  } else {
    out["r"] = w.r();
  }
  if (w.kind() == Weight::Kind::subexp && w.truncation() >= 0) out["truncation"] = w.truncation();
  return out;
}

inline Weight weight_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "polynomial") return Weight::polynomial(j.at("r").get<double>());
  if (kind == "subexp") return Weight::subexp(j.at("r").get<double>(), j.value("truncation", -1L));
  if (kind == "table") {
    std::map<long, double> values;
    for (const auto& [k, v] : j.at("table").items()) values[std::stol(k)] = v.get<double>();
    return Weight::table(std::move(values));
  }
  throw ParameterError("weight_from_json: unknown kind " + kind);
}

inline json to_json(const SmoothnessSequence& s) {
  switch (s.kind()) {
    case SmoothnessSequence::Kind::finite: return {{"kind", "finite"}, {"K", s.K()}};
    case SmoothnessSequence::Kind::analytic: return {{"kind", "analytic"}};
    case SmoothnessSequence::Kind::gevrey: return {{"kind", "gevrey"}, {"r", s.r()}};
    case SmoothnessSequence::Kind::custom: return {{"kind", "custom"}, {"table", s.custom_values()}};
  }
  return {};
}

inline SmoothnessSequence sequence_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "finite") return SmoothnessSequence::finite(j.at("K").get<long>());
  if (kind == "analytic") return SmoothnessSequence::analytic();
  if (kind == "gevrey") return SmoothnessSequence::gevrey(j.at("r").get<double>());
  if (kind == "custom") return SmoothnessSequence::custom(j.at("table").get<std::vector<double>>());
  throw ParameterError("sequence_from_json: unknown kind " + kind);
}

// ---------------------------------------------------------------- configuration

inline json to_json(const ExperimentConfig& c) {
  return {{"experiment", c.experiment},
          {"gamma_grid", c.gamma_grid},
          {"r_list", c.r_list},
          {"window_N", c.window_N},
          {"seed", c.seed},
          {"tolerances", c.tolerances},
          {"output", {{"path", c.output_path}, {"format", c.format == OutputFormat::csv ? "csv" : "json"}}},
          {"num_seeds", c.num_seeds},
          {"eps", c.eps},
          {"k_max", c.k_max},
          {"t_list", c.t_list},
          {"m_list", c.m_list}};
}

inline OutputFormat parse_format(const std::string& s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  throw ParameterError("unknown output format: " + s);
}

/// Missing keys keep the defaults of `base`; unknown keys are errors.
inline ExperimentConfig config_from_json(const json& j, ExperimentConfig base = {}) {
  if (!j.is_object()) throw ParameterError("config: expected a JSON object");
  static const std::vector<std::string> known{"experiment", "gamma_grid", "r_list", "window_N", "seed",  "tolerances",
                                              "output",     "num_seeds",  "eps",    "k_max",    "t_list", "m_list"};
  for (const auto& [k, v] : j.items())
    if (std::find(known.begin(), known.end(), k) == known.end()) throw ParameterError("config: unknown key " + k);
  try {
    if (j.contains("experiment")) base.experiment = j["experiment"].get<std::string>();
    if (j.contains("gamma_grid")) base.gamma_grid = j["gamma_grid"].get<std::vector<double>>();
    if (j.contains("r_list")) base.r_list = j["r_list"].get<std::vector<double>>();
    if (j.contains("window_N")) base.window_N = j["window_N"].get<long>();
    if (j.contains("seed")) base.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("tolerances"))
      for (const auto& [k, v] : j["tolerances"].items()) base.tolerances[k] = v.get<double>();
    if (j.contains("output")) {
      const json& o = j["output"];
      if (o.contains("path")) base.output_path = o["path"].get<std::string>();
      if (o.contains("format")) base.format = parse_format(o["format"].get<std::string>());
    }
    if (j.contains("num_seeds")) base.num_seeds = j["num_seeds"].get<int>();
    if (j.contains("eps")) base.eps = j["eps"].get<double>();
    if (j.contains("k_max")) base.k_max = j["k_max"].get<int>();
    if (j.contains("t_list")) base.t_list = j["t_list"].get<std::vector<double>>();
    if (j.contains("m_list")) base.m_list = j["m_list"].get<std::vector<long>>();
  } catch (const json::exception& e) {
    throw ParameterError(std::string("config: ") + e.what());
  }
  return base;
}

inline ExperimentConfig load_config(const std::string& path, ExperimentConfig base = {}) {
  std::ifstream in(path);
  if (!in) throw ParameterError("config: cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParameterError(std::string("config: ") + e.what());
  }
  return config_from_json(j, std::move(base));
}

// ---------------------------------------------------------------- matrices

/// Matrix Market coordinate complex general, 1-based; the window is kept in a
/// "% window lo hi" comment. Zero entries are omitted.
inline void write_matrix_market(const LatticeMatrix& a, std::ostream& os) {
  const CMatrix& m = a.entries();
  long nnz = 0;
  for (long j = 0; j < m.cols(); ++j)
    for (long i = 0; i < m.rows(); ++i) nnz += m(i, j) != cplx{0.0, 0.0};
  os << "%%MatrixMarket matrix coordinate complex general\n";
  os << "% window " << a.window().lo << ' ' << a.window().hi << '\n';
  os << m.rows() << ' ' << m.cols() << ' ' << nnz << '\n';
  for (long j = 0; j < m.cols(); ++j)
    for (long i = 0; i < m.rows(); ++i)
      if (m(i, j) != cplx{0.0, 0.0})
        os << i + 1 << ' ' << j + 1 << ' ' << format_number(m(i, j).real()) << ' ' << format_number(m(i, j).imag())
           << '\n';
}

inline LatticeMatrix read_matrix_market(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("%%MatrixMarket", 0) != 0) throw ParameterError("MatrixMarket: bad banner");
  std::istringstream banner(line);
  std::string tag, object, format, field, symmetry;
  banner >> tag >> object >> format >> field >> symmetry;
  if (object != "matrix" || format != "coordinate" || symmetry != "general")
    throw ParameterError("MatrixMarket: only coordinate general matrices are supported");
  if (field != "complex" && field != "real") throw ParameterError("MatrixMarket: field must be complex or real");
  std::optional<IndexWindow> window;
  while (std::getline(is, line) && !line.empty() && line[0] == '%') {
    std::istringstream c(line.substr(1));
    std::string key;
    long lo = 0, hi = 0;
    if (c >> key && key == "window" && c >> lo >> hi) window = IndexWindow(lo, hi);
  }
  std::istringstream size(line);
  long rows = 0, cols = 0, nnz = 0;
  if (!(size >> rows >> cols >> nnz) || rows != cols || rows < 1) throw ParameterError("MatrixMarket: bad size line");
  const IndexWindow w = window.value_or(IndexWindow(0, rows - 1));
  if (w.size() != rows) throw ParameterError("MatrixMarket: window does not match the size");
  CMatrix m = CMatrix::Zero(rows, cols);
  for (long e = 0; e < nnz; ++e) {
    long i = 0, j = 0;
    double re = 0.0, im = 0.0;
    if (!(is >> i >> j >> re)) throw ParameterError("MatrixMarket: truncated entry list");
    if (field == "complex" && !(is >> im)) throw ParameterError("MatrixMarket: missing imaginary part");
    if (i < 1 || i > rows || j < 1 || j > cols) throw ParameterError("MatrixMarket: index out of range");
    m(i - 1, j - 1) = {re, im};
  }
  return LatticeMatrix(w, std::move(m));
}

/// {window, tag, entries | symbol}. Toeplitz matrices store their finite
/// coefficients; others store row-major [re, im] pairs.
inline json to_json(const LatticeMatrix& a) {
  json out{{"window", {a.window().lo, a.window().hi}}};
  if (const ToeplitzSymbol* s = a.symbol()) {
    out["tag"] = "toeplitz";
    json sym = json::object();
    for (const auto& [m, c] : s->coefficients()) sym[std::to_string(m)] = {c.real(), c.imag()};
    out["symbol"] = sym;
    return out;
  }
  if (auto* b = std::get_if<BandedTag>(&a.tag())) {
    out["tag"] = "banded";
    out["bandwidth"] = b->bandwidth;
  } else {
    out["tag"] = "general";
  }
  json entries = json::array();
  for (long i = 0; i < a.size(); ++i)
    for (long j = 0; j < a.size(); ++j) entries.push_back({a.entries()(i, j).real(), a.entries()(i, j).imag()});
  out["entries"] = entries;
  return out;
}

inline LatticeMatrix matrix_from_json(const json& j) {
  const auto win = j.at("window").get<std::vector<long>>();
  if (win.size() != 2) throw ParameterError("matrix_from_json: window must be [lo, hi]");
  const IndexWindow w(win[0], win[1]);
  const std::string tag = j.value("tag", "general");
  if (tag == "toeplitz") {
    std::map<long, cplx> coeffs;
    for (const auto& [k, v] : j.at("symbol").items()) coeffs[std::stol(k)] = {v.at(0).get<double>(), v.at(1).get<double>()};
    return make_toeplitz(ToeplitzSymbol(std::move(coeffs)), w);
  }
  const json& e = j.at("entries");
  const long n = w.size();
  if (static_cast<long>(e.size()) != n * n) throw ParameterError("matrix_from_json: entry count does not match window");
  CMatrix m(n, n);
  for (long i = 0; i < n; ++i)
    for (long c = 0; c < n; ++c) {
      const json& v = e[static_cast<std::size_t>(i * n + c)];
      m(i, c) = {v.at(0).get<double>(), v.at(1).get<double>()};
    }
  if (tag == "banded") return LatticeMatrix(w, std::move(m), BandedTag{j.at("bandwidth").get<long>()});
  return LatticeMatrix(w, std::move(m));
}

// ---------------------------------------------------------------- output

inline void write_result(const ExperimentResult& r, OutputFormat f, std::ostream& os) {
  if (f == OutputFormat::csv) write_csv(r.table, os);
  else os << to_json(r).dump(2) << '\n';
}

}  // namespace decayinv
