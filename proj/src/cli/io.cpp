#include <cmath>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>

#include "semiradius/cli.hpp"
#include "semiradius/error.hpp"

namespace semiradius::cli {

namespace {

[[noreturn]] void parse_error(const std::string& msg) { throw Error(ErrorCode::Parse, msg); }

double finite_number(const json& j, const std::string& where) {
  if (!j.is_number()) parse_error(where + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, where + " is not finite");
  return v;
}

}  // namespace

json cplx_to_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

cplx cplx_from_json(const json& j, const std::string& where) {
  if (j.is_number()) return {finite_number(j, where), 0.0};
  if (!j.is_object() || !j.contains("re") || !j.contains("im")) {
    parse_error(where + " must be an object {\"re\": .., \"im\": ..}");
  }
  return {finite_number(j.at("re"), where + ".re"), finite_number(j.at("im"), where + ".im")};
}

json matrix_to_json(const CMat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(cplx_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMat matrix_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) parse_error(where + " must be a non-empty array of rows");
  const std::size_t n = j.size();
  std::size_t cols = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!j[i].is_array()) parse_error(where + " row " + std::to_string(i) + " is not an array");
    if (i == 0) cols = j[i].size();
    if (j[i].size() != cols) parse_error(where + " has ragged rows");
  }
  CMat m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < cols; ++k) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = cplx_from_json(
          j[i][k], where + "[" + std::to_string(i) + "][" + std::to_string(k) + "]");
    }
  }
  return m;
}

InstanceFile parse_instance_file(const json& j) {
  if (!j.is_object()) parse_error("instance file must be a JSON object");
  if (!j.contains("A")) parse_error("instance file has no \"A\"");
  InstanceFile f;
  f.a = matrix_from_json(j.at("A"), "A");
  if (f.a.rows() != f.a.cols()) {
    throw Error(ErrorCode::NonSquare, "A is " + std::to_string(f.a.rows()) + "x" +
                                          std::to_string(f.a.cols()));
  }
  if (j.contains("operators")) {
    const json& ops = j.at("operators");
    if (!ops.is_object()) parse_error("\"operators\" must be an object");
    for (const auto& [name, m] : ops.items()) {
      CMat t = matrix_from_json(m, "operators." + name);
      if (t.rows() != f.a.rows() || t.cols() != f.a.cols()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "operator " + name + " is " + std::to_string(t.rows()) + "x" +
                        std::to_string(t.cols()) + ", A is " + std::to_string(f.a.rows()) + "x" +
                        std::to_string(f.a.cols()));
      }
      f.operators.emplace(name, std::move(t));
    }
  }
  if (j.contains("block_shape") && !j.at("block_shape").is_null()) {
    const json& k = j.at("block_shape");
    if (!k.is_number_integer() || k.get<int>() < 1 || k.get<int>() > 3) {
      parse_error("\"block_shape\" must be an integer in 1..3");
    }
    f.block_shape = k.get<int>();
  }
  if (j.contains("tol") && !j.at("tol").is_null()) {
    f.tol = finite_number(j.at("tol"), "tol");
    if (!(*f.tol > 0.0 && *f.tol < 1.0)) parse_error("\"tol\" must lie in (0, 1)");
  }
  if (j.contains("params")) {
    const json& p = j.at("params");
    if (!p.is_object()) parse_error("\"params\" must be an object");
    if (p.contains("z1")) f.z1 = cplx_from_json(p.at("z1"), "params.z1");
    if (p.contains("z2")) f.z2 = cplx_from_json(p.at("z2"), "params.z2");
    if (p.contains("theta")) f.theta = finite_number(p.at("theta"), "params.theta");
  }
  if (j.contains("provenance")) f.provenance = j.at("provenance");
  return f;
}

InstanceFile load_instance_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    parse_error(path.string() + ": " + e.what());
  }
  return parse_instance_file(j);
}

json to_json(const InstanceFile& f) {
  json j;
  j["A"] = matrix_to_json(f.a);
  json ops = json::object();
  for (const auto& [name, m] : f.operators) ops[name] = matrix_to_json(m);
  j["operators"] = std::move(ops);
  if (f.block_shape) j["block_shape"] = *f.block_shape;
  if (f.tol) j["tol"] = *f.tol;
  json params = json::object();
  if (f.z1) params["z1"] = cplx_to_json(*f.z1);
  if (f.z2) params["z2"] = cplx_to_json(*f.z2);
  if (f.theta) params["theta"] = *f.theta;
  if (!params.empty()) j["params"] = std::move(params);
  if (!f.provenance.is_null()) j["provenance"] = f.provenance;
  return j;
}

InstanceFile to_file(const Instance& inst) {
  InstanceFile f;
  f.a = inst.space->weight();
  f.operators = inst.operators;
  f.block_shape = inst.block_shape;
  f.tol = inst.space->tol();
  f.z1 = inst.z1;
  f.z2 = inst.z2;
  f.theta = inst.theta;
  f.provenance = json{{"profile", inst.profile},
                      {"seed", inst.seed},
                      {"dim", inst.dim},
                      {"rank", inst.rank},
                      {"tags", inst.tags}};
  return f;
}

Instance to_instance(const InstanceFile& f, std::optional<double> tol_override) {
  Instance inst;
  const double tol = tol_override.value_or(f.tol.value_or(kDefaultRankTol));
  inst.space = std::make_shared<const SemiSpace>(SemiSpace::build(f.a, tol));
  inst.dim = static_cast<int>(f.a.rows());
  inst.rank = static_cast<int>(inst.space->rank());
  inst.profile = "file";
  for (const auto& [name, m] : f.operators) {
    if (m.rows() != f.a.rows() || m.cols() != f.a.cols()) {
      throw Error(ErrorCode::DimensionMismatch, "operator " + name + " does not match A");
    }
    require_finite(m, name.c_str());
    inst.operators.emplace(name, m);
    inst.kinds.emplace(name, OperatorKind::Member);
  }
  inst.block_shape = f.block_shape;
  inst.z1 = f.z1.value_or(cplx{0.0, 0.0});
  inst.z2 = f.z2.value_or(cplx{0.0, 0.0});
  inst.theta = f.theta.value_or(0.0);
  if (f.provenance.is_object() && f.provenance.contains("seed") &&
      f.provenance.at("seed").is_number_unsigned()) {
    inst.seed = f.provenance.at("seed").get<std::uint64_t>();
  }
  return inst;
}

namespace {

// Out-of-range literals become +-inf.
double to_double(const std::string& s) { return std::strtod(s.c_str(), nullptr); }

}  // namespace

cplx parse_complex(const std::string& text) {
  static const std::regex pattern(
      R"(^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*(?:([+-])\s*((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*i)?\s*$)");
  static const std::regex pure_imag(R"(^\s*([+-]?)((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*i\s*$)");
  std::smatch m;
  if (std::regex_match(text, m, pure_imag)) {
    const double mag = m[2].matched ? to_double(m[2].str()) : 1.0;
    if (!std::isfinite(mag)) throw Error(ErrorCode::NonFinite, "complex literal '" + text + "'");
    return {0.0, m[1].str() == "-" ? -mag : mag};
  }
  if (std::regex_match(text, m, pattern) && (m[1].matched || m[2].matched)) {
    const double re = m[1].matched ? to_double(m[1].str()) : 0.0;
    double im = 0.0;
    if (m[2].matched) {
      im = m[3].matched ? to_double(m[3].str()) : 1.0;
      if (m[2].str() == "-") im = -im;
    }
    if (!std::isfinite(re) || !std::isfinite(im)) {
      throw Error(ErrorCode::NonFinite, "complex literal '" + text + "'");
    }
    return {re, im};
  }
  parse_error("cannot read '" + text + "' as a complex number (expected e.g. 1-2i)");
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream o(tmp, std::ios::binary | std::ios::trunc);
    if (!o) parse_error("cannot write " + tmp.string());
    o << content;
    o.flush();
    if (!o) parse_error("short write to " + tmp.string());
  }
  fs::rename(tmp, path);
}

}  // namespace semiradius::cli
