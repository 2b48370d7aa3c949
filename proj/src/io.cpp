#include "gauge/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gauge {

using nlohmann::json;

namespace {

json parse_json(const std::string& text, const std::string& where) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw parse_error(where + ": " + e.what());
  }
}

[[noreturn]] void schema_fail(const std::string& where, const std::string& what) {
  throw parse_error(where + ": " + what);
}

double number_or_inf(const json& j, const std::string& where,
                     const std::string& field) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return kInf;
    schema_fail(where, field + " must be a number or \"inf\"");
  }
  if (!j.is_number()) schema_fail(where, field + " must be a number or \"inf\"");
  return j.get<double>();
}

// Shortest decimal digits that round-trip; "inf" is quoted per the schema.
std::string fmt(double x) {
  if (x == kInf) return "\"inf\"";
  return format_number(x);
}

StepFunction step_from_value(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("pieces"))
    schema_fail(where, "expected {\"domain\": ..., \"pieces\": [[length, value], ...]}");
  double domain = j.contains("domain")
                      ? number_or_inf(j.at("domain"), where, "\"domain\"")
                      : kInf;
  const json& pj = j.at("pieces");
  if (!pj.is_array()) schema_fail(where, "\"pieces\" must be an array");
  std::vector<Piece> pieces;
  for (const json& e : pj) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      schema_fail(where, "each piece must be [length, value]");
    pieces.push_back({e[0].get<double>(), e[1].get<double>()});
  }
  try {
    return StepFunction(domain, std::move(pieces));
  } catch (const error& e) {
    schema_fail(where, e.what());
  }
}

}  // namespace

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  double back;
  for (int prec = 1; prec < 17; ++prec) {
    char tight[32];
    std::snprintf(tight, sizeof tight, "%.*g", prec, x);
    std::sscanf(tight, "%lg", &back);
    if (back == x) return tight;
  }
  return buf;
}

StepFunction step_from_json(const std::string& text, const std::string& where) {
  return step_from_value(parse_json(text, where), where);
}

std::string step_to_json(const StepFunction& f) {
  std::ostringstream out;
  out << "{\"domain\": " << fmt(f.domain_length()) << ", \"pieces\": [";
  bool first = true;
  for (const Piece& p : f.pieces()) {
    if (!first) out << ", ";
    first = false;
    out << "[" << fmt(p.length) << ", " << fmt(p.value) << "]";
  }
  out << "]}";
  return out.str();
}

ComplexMatrix matrix_from_json(const std::string& text, const std::string& where) {
  json j = parse_json(text, where);
  if (!j.is_object() || !j.contains("n") || !j.contains("re"))
    schema_fail(where, "expected {\"n\": k, \"re\": [[...]], \"im\": [[...]]}");
  if (!j.at("n").is_number_integer()) schema_fail(where, "\"n\" must be an integer");
  int n = j.at("n").get<int>();
  if (n <= 0) schema_fail(where, "\"n\" must be positive");
  auto read_part = [&](const char* name, bool required) {
    std::vector<std::vector<double>> rows;
    if (!j.contains(name)) {
      if (required) schema_fail(where, std::string("missing \"") + name + "\"");
      rows.assign(n, std::vector<double>(n, 0.0));
      return rows;
    }
    const json& pj = j.at(name);
    if (!pj.is_array() || pj.size() != static_cast<size_t>(n))
      schema_fail(where, std::string("\"") + name + "\" must be an n x n array");
    for (const json& row : pj) {
      if (!row.is_array() || row.size() != static_cast<size_t>(n))
        schema_fail(where, std::string("\"") + name + "\" must be an n x n array");
      std::vector<double> r;
      for (const json& x : row) {
        if (!x.is_number()) schema_fail(where, "matrix entries must be numbers");
        r.push_back(x.get<double>());
      }
      rows.push_back(std::move(r));
    }
    return rows;
  };
  auto re = read_part("re", true);
  auto im = read_part("im", false);
  ComplexMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) m.at(i, k) = {re[i][k], im[i][k]};
  if (!m.all_finite()) schema_fail(where, "matrix entries must be finite");
  return m;
}

std::string matrix_to_json(const ComplexMatrix& m) {
  std::ostringstream out;
  auto part = [&](auto get) {
    out << "[";
    for (int i = 0; i < m.n(); ++i) {
      out << (i ? ", [" : "[");
      for (int j = 0; j < m.n(); ++j)
        out << (j ? ", " : "") << fmt(get(m.at(i, j)));
      out << "]";
    }
    out << "]";
  };
  out << "{\"n\": " << m.n() << ", \"re\": ";
  part([](const cdouble& z) { return z.real(); });
  out << ", \"im\": ";
  part([](const cdouble& z) { return z.imag(); });
  out << "}";
  return out.str();
}

ComplexMatrix matrix_from_csv(const std::string& text, const std::string& where) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r,") == std::string::npos) continue;
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        schema_fail(where, "line " + std::to_string(lineno) +
                               ": expected a number, got \"" + cell + "\"");
      }
    }
    rows.push_back(std::move(row));
  }
  size_t n = rows.size();
  if (n == 0) schema_fail(where, "empty matrix");
  for (size_t i = 0; i < n; ++i)
    if (rows[i].size() != 2 * n)
      schema_fail(where, "line " + std::to_string(i + 1) + ": expected " +
                             std::to_string(2 * n) +
                             " columns (re,im interleaved)");
  ComplexMatrix m(static_cast<int>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      m.at(static_cast<int>(i), static_cast<int>(j)) = {rows[i][2 * j],
                                                        rows[i][2 * j + 1]};
  if (!m.all_finite()) schema_fail(where, "matrix entries must be finite");
  return m;
}

std::string matrix_to_csv(const ComplexMatrix& m) {
  std::ostringstream out;
  for (int i = 0; i < m.n(); ++i) {
    for (int j = 0; j < m.n(); ++j) {
      if (j) out << ",";
      out << fmt(m.at(i, j).real()) << "," << fmt(m.at(i, j).imag());
    }
    out << "\n";
  }
  return out.str();
}

SimpleOperator simple_from_json(const std::string& text, const std::string& where) {
  json j = parse_json(text, where);
  if (!j.is_object() || !j.contains("terms") || !j.at("terms").is_array())
    schema_fail(where, "expected {\"terms\": [[value, weight], ...]}");
  std::vector<SimpleOperator::Term> terms;
  for (const json& e : j.at("terms")) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      schema_fail(where, "each term must be [value, weight]");
    terms.push_back({e[0].get<double>(), e[1].get<double>()});
  }
  try {
    return SimpleOperator(std::move(terms));
  } catch (const error& e) {
    schema_fail(where, e.what());
  }
}

std::string simple_to_json(const SimpleOperator& op) {
  std::ostringstream out;
  out << "{\"terms\": [";
  bool first = true;
  for (const auto& t : op.terms) {
    if (!first) out << ", ";
    first = false;
    out << "[" << fmt(t.value) << ", " << fmt(t.weight) << "]";
  }
  out << "]}";
  return out.str();
}

std::vector<StepFunction> family_from_json(const std::string& text,
                                           const std::string& where) {
  json j = parse_json(text, where);
  const json* arr = nullptr;
  if (j.is_array())
    arr = &j;
  else if (j.is_object() && j.contains("family") && j.at("family").is_array())
    arr = &j.at("family");
  else
    schema_fail(where, "expected {\"family\": [...]} or a bare array");
  std::vector<StepFunction> fs;
  for (const json& e : *arr) fs.push_back(step_from_value(e, where));
  return fs;
}

std::string curve_to_json(const SNumberCurve& mu) { return step_to_json(mu.fn()); }

std::string curve_to_csv(const SNumberCurve& mu) {
  std::ostringstream out;
  out << "length,value\n";
  for (const Piece& p : mu.pieces())
    out << fmt(p.length) << "," << fmt(p.value) << "\n";
  return out.str();
}

std::string dual_estimate_to_json(const DualEstimate& est) {
  std::ostringstream out;
  out << "{\"value\": " << fmt(est.value) << ", \"method\": \""
      << to_string(est.method) << "\", \"trials_used\": " << est.trials_used
      << ", \"witness\": " << simple_to_json(est.witness) << "}";
  return out.str();
}

std::string dual_estimate_to_csv(const DualEstimate& est) {
  std::ostringstream out;
  out << "value," << fmt(est.value) << "\nmethod," << to_string(est.method)
      << "\ntrials_used," << est.trials_used << "\n";
  return out.str();
}

std::string dominance_report_to_json(const DominanceReport& rep) {
  std::ostringstream out;
  out << "{\"dominates\": " << (rep.dominates ? "true" : "false")
      << ", \"max_violation\": " << fmt(rep.max_violation)
      << ", \"checked_breakpoints\": [";
  bool first = true;
  for (double t : rep.checked_breakpoints) {
    if (!first) out << ", ";
    first = false;
    out << fmt(t);
  }
  out << "], \"transfer_family_size\": " << rep.transfer_family_size
      << ", \"transfer_holds\": " << (rep.transfer_holds ? "true" : "false")
      << "}";
  return out.str();
}

std::string dominance_report_to_csv(const DominanceReport& rep) {
  std::ostringstream out;
  out << "dominates," << (rep.dominates ? "true" : "false") << "\nmax_violation,"
      << fmt(rep.max_violation) << "\ntransfer_family_size,"
      << rep.transfer_family_size << "\ntransfer_holds,"
      << (rep.transfer_holds ? "true" : "false") << "\n";
  return out.str();
}

SNumberCurve Operand::curve() const {
  switch (kind) {
    case Kind::matrix:
      return mu_of_matrix(matrix);
    case Kind::step:
      return mu_of_step(step);
    default:
      return mu_of_simple(simple);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ComplexMatrix load_matrix(const std::string& path) {
  std::string text = read_file(path);
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv")
    return matrix_from_csv(text, path);
  return matrix_from_json(text, path);
}

StepFunction load_step(const std::string& path) {
  return step_from_json(read_file(path), path);
}

SimpleOperator load_simple(const std::string& path) {
  return simple_from_json(read_file(path), path);
}

std::vector<StepFunction> load_family(const std::string& path) {
  return family_from_json(read_file(path), path);
}

Operand load_operand(const std::string& path) {
  Operand op{Operand::Kind::step, {}, {}, {}};
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") {
    op.kind = Operand::Kind::matrix;
    op.matrix = matrix_from_csv(read_file(path), path);
    return op;
  }
  std::string text = read_file(path);
  json j = parse_json(text, path);
  if (j.is_object() && j.contains("n") && j.contains("re")) {
    op.kind = Operand::Kind::matrix;
    op.matrix = matrix_from_json(text, path);
  } else if (j.is_object() && j.contains("terms")) {
    op.kind = Operand::Kind::simple;
    op.simple = simple_from_json(text, path);
  } else if (j.is_object() && j.contains("pieces")) {
    op.kind = Operand::Kind::step;
    op.step = step_from_json(text, path);
  } else {
    schema_fail(path, "unrecognized operand: expected a matrix, step function "
                      "or simple operator document");
  }
  return op;
}

NormSpec NormSpec::parse(const std::string& text) {
  auto with_value = [&](const std::string& prefix) -> std::string {
    return text.substr(prefix.size());
  };
  auto parse_scalar = [&](const std::string& s, const char* what) -> double {
    if (s == "inf") return kInf;
    try {
      size_t used = 0;
      double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw parameter_error(std::string("norm spec: bad ") + what + " in \"" +
                            text + "\"");
    }
  };
  if (text == "op") return NormSpec::operator_norm();
  if (text.rfind("kyfan:t=", 0) == 0) {
    double t = parse_scalar(with_value("kyfan:t="), "index");
    if (std::isnan(t) || t < 0.0)
      throw parameter_error("norm spec: kyfan index must be in [0, inf]");
    return NormSpec::ky_fan(t);
  }
  if (text.rfind("lp:p=", 0) == 0) {
    double p = parse_scalar(with_value("lp:p="), "exponent");
    if (std::isnan(p) || p < 1.0)
      throw parameter_error("norm spec: lp exponent must be in [1, inf]");
    return NormSpec::lp(p);
  }
  if (text.rfind("fnorm:@", 0) == 0) {
    StepFunction f = load_step(with_value("fnorm:@"));
    if (!in_gauge_class(f))
      throw parameter_error("norm spec: fnorm weight outside the gauge class");
    return NormSpec::f_norm(std::move(f));
  }
  if (text.rfind("famsup:@", 0) == 0) {
    std::vector<StepFunction> fs = load_family(with_value("famsup:@"));
    if (fs.empty())
      throw parameter_error("norm spec: famsup family must be nonempty");
    for (const StepFunction& f : fs)
      if (!in_gauge_class(f))
        throw parameter_error("norm spec: famsup member outside the gauge class");
    return NormSpec::family_sup(std::move(fs));
  }
  throw parameter_error(
      "norm spec: expected op | kyfan:t=<v|inf> | lp:p=<v|inf> | "
      "fnorm:@<file> | famsup:@<file>, got \"" +
      text + "\"");
}

}  // namespace gauge
