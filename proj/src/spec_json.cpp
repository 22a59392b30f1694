#include "splitrange/spec_json.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "splitrange/builtin_functions.hpp"

namespace splitrange {

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& why) {
  throw std::invalid_argument("operator spec: field '" + field + "' " + why);
}

const nlohmann::json& require(const nlohmann::json& spec, const std::string& field) {
  auto it = spec.find(field);
  if (it == spec.end()) fail(field, "is missing");
  return *it;
}

Vector parse_vector(const nlohmann::json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) fail(field, "must be a non-empty array of numbers");
  Vector v(static_cast<int>(j.size()));
  for (int i = 0; i < v.size(); ++i) {
    if (!j[i].is_number()) fail(field, "must contain only numbers");
    v(i) = j[i].get<double>();
  }
  return v;
}

Matrix parse_matrix(const nlohmann::json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) fail(field, "must be a non-empty array of rows");
  const auto cols = j[0].size();
  Matrix m(static_cast<int>(j.size()), static_cast<int>(cols));
  for (int r = 0; r < m.rows(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols) fail(field, "rows must be equal-length arrays");
    for (int c = 0; c < m.cols(); ++c) {
      if (!j[r][c].is_number()) fail(field, "must contain only numbers");
      m(r, c) = j[r][c].get<double>();
    }
  }
  return m;
}

}  // namespace

OperatorDescriptor operator_from_spec(const nlohmann::json& spec) {
  if (!spec.is_object()) fail("(root)", "must be a JSON object");
  const nlohmann::json& kind_json = require(spec, "kind");
  if (!kind_json.is_string()) fail("kind", "must be a string");
  const std::string kind = kind_json.get<std::string>();

  if (kind == "ball") {
    const Vector center = parse_vector(require(spec, "center"), "center");
    const nlohmann::json& rj = require(spec, "radius");
    if (!rj.is_number()) fail("radius", "must be a number");
    const double radius = rj.get<double>();
    if (radius <= 0) fail("radius", "must be positive");
    return ball_normal_cone(center, radius);
  }
  if (kind == "affine-subspace") {
    const Vector base = parse_vector(require(spec, "base"), "base");
    const Matrix rows = parse_matrix(require(spec, "basis"), "basis");
    if (rows.cols() != base.size()) fail("basis", "rows must match the dimension of 'base'");
    return affine_normal_cone(base, rows);
  }
  if (kind == "linear") {
    const Matrix m = parse_matrix(require(spec, "matrix"), "matrix");
    if (m.rows() != m.cols()) fail("matrix", "must be square");
    return linear_operator(m);
  }
  if (kind == "prox") {
    const nlohmann::json& fj = require(spec, "function");
    if (!fj.is_string()) fail("function", "must be a builtin function name");
    const BuiltinFunction f = builtin_function(fj.get<std::string>());
    int dim = f.dim;  // 0 means dimension-generic
    if (auto it = spec.find("dim"); it != spec.end()) {
      if (!it->is_number_integer() || it->get<int>() < 1) fail("dim", "must be a positive integer");
      if (f.dim > 0 && it->get<int>() != f.dim)
        fail("dim", "conflicts with the fixed dimension of '" + f.name + "'");
      dim = it->get<int>();
    }
    if (dim <= 0) fail("dim", "is required for the dimension-generic function '" + f.name + "'");
    double half_width = 16.0;
    if (auto it = spec.find("window"); it != spec.end()) {
      if (!it->is_number() || it->get<double>() <= 0) fail("window", "must be a positive half-width");
      half_width = it->get<double>();
    }
    int depth = 12;
    if (auto it = spec.find("depth"); it != spec.end()) {
      if (!it->is_number_integer() || it->get<int>() < 1) fail("depth", "must be a positive integer");
      depth = it->get<int>();
    }
    return subdifferential_operator(f, dim, Box::cube(dim, half_width), depth);
  }
  if (kind == "fne") {
    const nlohmann::json& mj = require(spec, "map");
    if (mj.is_string()) {
      if (mj.get<std::string>() != "identity") fail("map", "string form must be \"identity\"");
      const nlohmann::json& dj = require(spec, "dim");
      if (!dj.is_number_integer() || dj.get<int>() < 1) fail("dim", "must be a positive integer");
      const int dim = dj.get<int>();
      return firmly_nonexpansive_wrapper([](const Vector& x) { return x; }, dim,
                                         Box::cube(dim, 10.0));
    }
    const Matrix m = parse_matrix(mj, "map");
    if (m.rows() != m.cols()) fail("map", "matrix must be square");
    return firmly_nonexpansive_wrapper([m](const Vector& x) -> Vector { return m * x; },
                                       static_cast<int>(m.rows()),
                                       Box::cube(static_cast<int>(m.rows()), 10.0));
  }
  if (kind == "inverse") return inverse(operator_from_spec(require(spec, "inner")));
  if (kind == "vee") return vee(operator_from_spec(require(spec, "inner")));
  if (kind == "shift-inner" || kind == "shift-outer") {
    OperatorDescriptor inner = operator_from_spec(require(spec, "inner"));
    const Vector w = parse_vector(require(spec, "shift"), "shift");
    if (w.size() != inner.dim) fail("shift", "must match the inner operator's dimension");
    return kind == "shift-inner" ? shift_inner(inner, w) : shift_outer(inner, w);
  }
  fail("kind", "is unknown: '" + kind + "'");
}

OperatorPair pair_from_spec(const nlohmann::json& spec) {
  if (!spec.is_object()) throw std::invalid_argument("pair spec: root must be a JSON object");
  auto a = spec.find("A");
  auto b = spec.find("B");
  if (a == spec.end()) throw std::invalid_argument("pair spec: field 'A' is missing");
  if (b == spec.end()) throw std::invalid_argument("pair spec: field 'B' is missing");
  return OperatorPair(operator_from_spec(*a), operator_from_spec(*b));
}

OperatorPair load_pair_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("pair spec: cannot open file '" + path + "'");
  nlohmann::json spec;
  try {
    in >> spec;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("pair spec: '" + path + "' is not valid JSON: " + e.what());
  }
  return pair_from_spec(spec);
}

Vector parse_vector_string(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    try {
      std::size_t pos = 0;
      values.push_back(std::stod(token, &pos));
      while (pos < token.size() && std::isspace(static_cast<unsigned char>(token[pos]))) ++pos;
      if (pos != token.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw std::invalid_argument("vector literal: cannot parse component '" + token + "'");
    }
  }
  if (values.empty()) throw std::invalid_argument("vector literal: empty");
  Vector v(static_cast<int>(values.size()));
  for (int i = 0; i < v.size(); ++i) v(i) = values[static_cast<std::size_t>(i)];
  return v;
}

}  // namespace splitrange
