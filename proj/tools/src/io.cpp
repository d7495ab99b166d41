#include "extvol_cli/io.hpp"

#include <extvol/error.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace extvol::cli {
namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw InputError(path + ": " + what);
}

std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }
std::string key_at(const std::string& path, const char* key) { return path + "." + key; }

const Json& member(const Json& j, const std::string& path, const char* key) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(key_at(path, key), "missing");
  return *it;
}

const Json& array(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

double number(const Json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) fail(path, "expected a finite number");
  return x;
}

long long integer(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return j.get<long long>();
  if (j.is_number_float()) {
    const double x = j.get<double>();
    if (std::isfinite(x) && x == std::floor(x) && std::abs(x) < 9.0e15) return static_cast<long long>(x);
  }
  fail(path, "expected an integer");
}

std::uint64_t unsigned_integer(const Json& j, const std::string& path) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  const long long v = integer(j, path);
  if (v < 0) fail(path, "expected a non-negative integer");
  return static_cast<std::uint64_t>(v);
}

Eigen::MatrixXd real_matrix(const Json& j, const std::string& path) {
  array(j, path);
  if (j.empty()) fail(path, "expected a non-empty matrix");
  const std::size_t rows = j.size();
  const std::size_t cols = array(j[0], at(path, std::size_t{0})).size();
  Eigen::MatrixXd m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const Json& row = array(j[r], at(path, r));
    if (row.size() != cols) fail(at(path, r), "ragged row");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = number(row[c], at(at(path, r), c));
  }
  return m;
}

Eigen::VectorXd real_vector(const Json& j, const std::string& path) {
  array(j, path);
  Eigen::VectorXd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v(i) = number(j[i], at(path, i));
  return v;
}

Box parse_box(const Json& j, const std::string& path) {
  array(j, path);
  Box box;
  for (std::size_t d = 0; d < j.size(); ++d) {
    const Json& iv = array(j[d], at(path, d));
    if (iv.size() != 2) fail(at(path, d), "expected [lo, hi]");
    box.push_back({number(iv[0], at(at(path, d), 0)), number(iv[1], at(at(path, d), 1))});
  }
  return box;
}

std::vector<Box> parse_boxes(const Json& j, const std::string& path) {
  array(j, path);
  std::vector<Box> boxes;
  for (std::size_t i = 0; i < j.size(); ++i) boxes.push_back(parse_box(j[i], at(path, i)));
  return boxes;
}

int positive_int(const Json& j, const std::string& path) {
  const long long v = integer(j, path);
  if (v < 1 || v > 1'000'000'000) fail(path, "expected a positive integer");
  return static_cast<int>(v);
}

// Library errors raised while building a value from a JSON node are reported at that node.
template <class F>
auto build(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw InputError(path + ": " + e.what());
  }
}

void append_number(std::string& out, double x) {
  if (!std::isfinite(x)) {
    out += "null";
    return;
  }
  out += format_number(x);
}

void dump_into(std::string& out, const Json& j) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += Json(it.key()).dump();
        out += ':';
        dump_into(out, it.value());
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        dump_into(out, j[i]);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float:
      append_number(out, j.get<double>());
      break;
    default:
      out += j.dump();
  }
}

}  // namespace

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

Json load_json(const std::string& text_or_path, const std::string& root) {
  std::string text = text_or_path;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) fail(root, "empty input");
  if (text[first] != '{' && text[first] != '[') {
    std::ifstream in(text_or_path);
    if (!in) fail(root, "cannot read file '" + text_or_path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(root, std::string("malformed JSON: ") + e.what());
  }
}

Complex parse_complex(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) fail(path, "expected [re, im]");
  return {number(j[0], at(path, std::size_t{0})), number(j[1], at(path, 1))};
}

ComplexLattice parse_lattice(const Json& j, const std::string& path) {
  const long long n = integer(member(j, path, "n"), key_at(path, "n"));
  if (n < 1) fail(key_at(path, "n"), "dimension must be positive");
  const std::string gpath = key_at(path, "generators");
  const Json& gens = array(member(j, path, "generators"), gpath);
  if (static_cast<long long>(gens.size()) != 2 * n) {
    fail(gpath, "expected " + std::to_string(2 * n) + " generators, got " + std::to_string(gens.size()));
  }
  Eigen::MatrixXcd g(n, 2 * n);
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const Json& col = array(gens[k], at(gpath, k));
    if (static_cast<long long>(col.size()) != n) {
      fail(at(gpath, k), "expected " + std::to_string(n) + " complex coordinates");
    }
    for (std::size_t i = 0; i < col.size(); ++i) {
      g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = parse_complex(col[i], at(at(gpath, k), i));
    }
  }
  return build(path, [&] { return ComplexLattice(g); });
}

IntMatrix parse_int_matrix(const Json& j, const std::string& path) {
  array(j, path);
  if (j.empty()) fail(path, "expected a non-empty matrix");
  const std::size_t cols = array(j[0], at(path, std::size_t{0})).size();
  IntMatrix m(j.size(), cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    const Json& row = array(j[r], at(path, r));
    if (row.size() != cols) fail(at(path, r), "ragged row");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = integer(row[c], at(at(path, r), c));
  }
  return m;
}

DecomposableClass parse_class(const Json& j, const std::string& path) {
  const IntMatrix m = parse_int_matrix(member(j, path, "coeffs"), key_at(path, "coeffs"));
  return build(path, [&] { return DecomposableClass(m); });
}

SiegelPoint parse_siegel(const Json& j, const std::string& path) {
  const Eigen::MatrixXd a = real_matrix(member(j, path, "A"), key_at(path, "A"));
  const Eigen::MatrixXd b = real_matrix(member(j, path, "B"), key_at(path, "B"));
  return build(path, [&] { return SiegelPoint(a, b); });
}

ConformalField parse_field(const Json& j, const std::string& path) {
  const Complex tau = parse_complex(member(j, path, "tau"), key_at(path, "tau"));
  const int n = positive_int(member(j, path, "N"), key_at(path, "N"));
  if (j.contains("trig")) {
    const std::string tpath = key_at(path, "trig");
    const Json& t = j["trig"];
    if (!t.is_object()) fail(tpath, "expected an object");
    TrigFieldSpec spec;
    spec.seed = unsigned_integer(member(t, tpath, "seed"), key_at(tpath, "seed"));
    if (t.contains("degree")) spec.degree = positive_int(t["degree"], key_at(tpath, "degree"));
    if (t.contains("lo")) spec.lo = number(t["lo"], key_at(tpath, "lo"));
    if (t.contains("hi")) spec.hi = number(t["hi"], key_at(tpath, "hi"));
    return build(path, [&] { return ConformalField::trigonometric(tau, n, spec); });
  }
  const std::string vpath = key_at(path, "values");
  const Eigen::MatrixXd v = real_matrix(member(j, path, "values"), vpath);
  if (v.rows() != n || v.cols() != n) fail(vpath, "expected an N x N array");
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) values.push_back(v(r, c));
  }
  return build(path, [&] { return ConformalField(tau, n, std::move(values)); });
}

LogBase parse_log_base(const Json& j, const std::string& path) {
  const long long n = integer(member(j, path, "n"), key_at(path, "n"));
  if (n < 1 || n > 16) fail(key_at(path, "n"), "dimension must be between 1 and 16");
  const int dim = static_cast<int>(n);
  if (j.contains("boxes")) {
    std::vector<Box> boxes = parse_boxes(j["boxes"], key_at(path, "boxes"));
    std::optional<Eigen::VectorXd> shift;
    if (j.contains("shift")) shift = real_vector(j["shift"], key_at(path, "shift"));
    return build(path, [&] { return LogBase::from_boxes(dim, std::move(boxes), std::move(shift)); });
  }
  const std::string ppath = key_at(path, "predicate");
  const Json& pj = member(j, path, "predicate");
  if (!pj.is_object()) fail(ppath, "expected an object");
  Predicate p;
  const Json& kind = member(pj, ppath, "kind");
  if (!kind.is_string()) fail(key_at(ppath, "kind"), "expected a string");
  p.kind = build(key_at(ppath, "kind"), [&] { return parse_predicate_kind(kind.get<std::string>()); });
  const std::string params_path = key_at(ppath, "params");
  const Json& params = member(pj, ppath, "params");
  switch (p.kind) {
    case Predicate::Kind::ball:
      p.center = real_vector(member(params, params_path, "center"), key_at(params_path, "center"));
      p.radius = number(member(params, params_path, "radius"), key_at(params_path, "radius"));
      break;
    case Predicate::Kind::halfspaces:
      p.normals = real_matrix(member(params, params_path, "normals"), key_at(params_path, "normals"));
      p.offsets = real_vector(member(params, params_path, "offsets"), key_at(params_path, "offsets"));
      break;
    case Predicate::Kind::boxes:
      p.boxes = parse_boxes(member(params, params_path, "boxes"), key_at(params_path, "boxes"));
      break;
  }
  if (params.contains("pre_map")) {
    const std::string mpath = key_at(params_path, "pre_map");
    p.pre_map = AffineMap{real_matrix(member(params["pre_map"], mpath, "matrix"), key_at(mpath, "matrix")),
                          real_vector(member(params["pre_map"], mpath, "shift"), key_at(mpath, "shift"))};
  }
  p.bbox = parse_box(member(pj, ppath, "bbox"), key_at(ppath, "bbox"));
  p.mc.samples = unsigned_integer(member(pj, ppath, "samples"), key_at(ppath, "samples"));
  p.mc.seed = unsigned_integer(member(pj, ppath, "seed"), key_at(ppath, "seed"));
  return build(path, [&] { return LogBase::from_predicate(dim, std::move(p)); });
}

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const ComplexLattice& lattice) {
  Json gens = Json::array();
  for (int k = 0; k < 2 * lattice.dimension(); ++k) {
    Json col = Json::array();
    for (int i = 0; i < lattice.dimension(); ++i) col.push_back(to_json(lattice.generator(k, i)));
    gens.push_back(std::move(col));
  }
  return Json{{"n", lattice.dimension()}, {"generators", std::move(gens)}};
}

Json to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const DecomposableClass& cls) { return Json{{"coeffs", to_json(cls.coeffs())}}; }

Json to_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const Eigen::MatrixXcd& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const SiegelPoint& point) { return Json{{"A", to_json(point.a())}, {"B", to_json(point.b())}}; }

Json to_json(const ReductionTrace& trace) {
  Json steps = Json::array();
  for (const ReductionStep& s : trace.steps) steps.push_back(s.label());
  return Json{{"steps", std::move(steps)}, {"final", to_json(trace.final_tau)}};
}

Json to_json(const BoundReport& report) {
  Json j{{"n", report.n},
         {"samples", report.samples},
         {"seed", report.seed},
         {"max_ratio", report.max_ratio},
         {"violations", report.violations},
         {"histogram", report.histogram},
         {"coeff_bound", report.coeff_bound},
         {"bound", report.bound},
         {"polarization_violations", report.polarization_violations}};
  if (report.first_violation) {
    j["witness"] = Json{{"point", to_json(report.first_violation->point)},
                        {"ratio", report.first_violation->ratio}};
  }
  return j;
}

Json to_json(const LoewnerReport& report) {
  return Json{{"min_ratio", report.min_ratio},
              {"minimizer", Json{{"p", report.minimizer.p}, {"q", report.minimizer.q}}},
              {"bound", report.bound},
              {"tolerance", report.tolerance},
              {"margin", report.margin},
              {"ok", report.ok},
              {"classes_examined", report.classes_examined},
              {"classes_total", report.classes_total}};
}

Json to_json(const MinimalityTrial& trial) {
  return Json{{"index", trial.index},       {"seed", trial.seed},
              {"amplitude", trial.amplitude}, {"value", trial.value},
              {"margin", trial.margin},     {"doubling_delta", trial.doubling_delta}};
}

Json to_json(const MinimalityReport& report) {
  Json j{{"trials", report.trials},
         {"violations", report.violations},
         {"min_margin", report.min_margin},
         {"flat_value", report.flat_value},
         {"dimension", report.dimension},
         {"mean_margin", report.mean_margin},
         {"max_doubling_delta", report.max_doubling_delta},
         {"worst", to_json(report.worst)}};
  if (report.first_violation) j["witness"] = to_json(*report.first_violation);
  return j;
}

Json to_json(const Box& box) {
  Json j = Json::array();
  for (const Interval& iv : box) j.push_back(Json::array({iv.lo, iv.hi}));
  return j;
}

std::string dump(const Json& j) {
  std::string out;
  dump_into(out, j);
  return out;
}

}  // namespace extvol::cli
