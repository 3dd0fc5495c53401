#include "convbody/body_spec.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "convbody/errors.hpp"

namespace convbody {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& ptr, const std::string& msg) {
  throw Error(ErrorKind::Parse, (ptr.empty() ? "/" : ptr) + ": " + msg);
}

const json& field(const json& j, const std::string& ptr, const char* key) {
  if (!j.contains(key)) fail(ptr, std::string("missing field '") + key + "'");
  return j.at(key);
}

double number(const json& j, const std::string& ptr) {
  if (!j.is_number()) fail(ptr, "expected a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& ptr) {
  if (!j.is_number_integer()) fail(ptr, "expected an integer");
  return j.get<int>();
}

Vector vector_of(const json& j, const std::string& ptr) {
  if (!j.is_array() || j.empty()) fail(ptr, "expected a nonempty array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) v(i) = number(j[i], ptr + "/" + std::to_string(i));
  return v;
}

PointMatrix matrix_of(const json& j, const std::string& ptr) {
  if (!j.is_array() || j.empty()) fail(ptr, "expected a nonempty array of rows");
  PointMatrix m;
  for (size_t i = 0; i < j.size(); ++i) {
    const std::string rp = ptr + "/" + std::to_string(i);
    const Vector row = vector_of(j[i], rp);
    if (i == 0) m.resize(static_cast<Eigen::Index>(j.size()), row.size());
    else if (row.size() != m.cols()) fail(rp, "row length differs from the first row");
    m.row(i) = row.transpose();
  }
  return m;
}

int dimension(const json& j, const std::string& ptr) {
  const int n = integer(field(j, ptr, "n"), ptr + "/n");
  if (n < 1 || n > 8) fail(ptr + "/n", "dimension must be between 1 and 8");
  return n;
}

BodySpec parse_one(const json& j, const std::string& ptr) {
  if (!j.is_object()) fail(ptr, "expected an object");
  const json& k = field(j, ptr, "kind");
  if (!k.is_string()) fail(ptr + "/kind", "expected a string");
  const std::string kind = k.get<std::string>();
  auto build = [&]() -> ConvexBody {
    if (kind == "hpoly") {
      const PointMatrix a = matrix_of(field(j, ptr, "A"), ptr + "/A");
      const Vector b = vector_of(field(j, ptr, "b"), ptr + "/b");
      if (b.size() != a.rows()) fail(ptr + "/b", "length must equal the number of rows of A");
      return ConvexBody::from_halfspaces(a, b);
    } else if (kind == "vpoly") {
      return ConvexBody::from_vertices(matrix_of(field(j, ptr, "vertices"), ptr + "/vertices"));
    } else if (kind == "ball") {
      const Vector c = vector_of(field(j, ptr, "center"), ptr + "/center");
      const double r = j.contains("radius") ? number(j["radius"], ptr + "/radius") : 1.0;
      return ConvexBody::ball(c, r);
    } else if (kind == "cube") {
      const double side = j.contains("side") ? number(j["side"], ptr + "/side") : 1.0;
      return ConvexBody::cube(dimension(j, ptr), side);
    } else if (kind == "simplex") {
      return ConvexBody::simplex(dimension(j, ptr));
    } else if (kind == "cross") {
      return ConvexBody::cross_polytope(dimension(j, ptr));
    }
    fail(ptr + "/kind", "unknown kind '" + kind + "'");
  };
  try {
    ConvexBody body = build();
    if (j.contains("transform")) {
      const std::string tp = ptr + "/transform";
      const json& t = j["transform"];
      if (!t.is_object()) fail(tp, "expected an object");
      const int n = body.dim();
      Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
      Vector shift = Vector::Zero(n);
      if (t.contains("matrix")) {
        m = matrix_of(t["matrix"], tp + "/matrix");
        if (m.rows() != n || m.cols() != n) fail(tp + "/matrix", "must be n x n");
      }
      if (t.contains("translation")) {
        shift = vector_of(t["translation"], tp + "/translation");
        if (shift.size() != n) fail(tp + "/translation", "must have length n");
      }
      body = apply(AffineMap(m, shift), body);
    }
    std::string label = kind;
    if (j.contains("label")) {
      if (!j["label"].is_string()) fail(ptr + "/label", "expected a string");
      label = j["label"].get<std::string>();
    }
    return BodySpec{std::move(body), label};
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Parse) throw;
    fail(ptr, e.what());
  }
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, std::string("body spec: ") + e.what());
  }
}

}  // namespace

BodySpec parse_body_spec(const std::string& text) { return parse_one(parse_json(text), ""); }

std::vector<BodySpec> parse_body_specs(const std::string& text) {
  const json j = parse_json(text);
  std::vector<BodySpec> out;
  if (j.is_array()) {
    if (j.empty()) fail("", "empty body list");
    for (size_t i = 0; i < j.size(); ++i) out.push_back(parse_one(j[i], "/" + std::to_string(i)));
  } else {
    out.push_back(parse_one(j, ""));
  }
  return out;
}

ConvexBody named_body(const std::string& name, int n, double r) {
  std::string base = name;
  bool neg = false;
  if (base.rfind("neg-", 0) == 0) {
    neg = true;
    base = base.substr(4);
  }
  size_t cut = base.size();
  while (cut > 0 && std::isdigit(static_cast<unsigned char>(base[cut - 1]))) --cut;
  if (cut < base.size()) {
    n = std::stoi(base.substr(cut));
    base = base.substr(0, cut);
  }
  if (n < 1 || n > 8) throw Error(ErrorKind::Parse, "body '" + name + "': dimension must be 1..8");
  auto build = [&]() -> ConvexBody {
    if (base == "cube") return ConvexBody::cube(n);
    if (base == "simplex") return ConvexBody::simplex(n);
    if (base == "cross") return ConvexBody::cross_polytope(n);
    if (base == "ball") return ConvexBody::ball(Vector::Zero(n), r);
    if (base == "interval" && n == 1) return ConvexBody::interval(-0.5, 0.5);
    throw Error(ErrorKind::Parse, "unknown body '" + name + "'");
  };
  const ConvexBody b = build();
  return neg ? reflect(b) : b;
}

std::vector<BodySpec> load_bodies(const std::string& arg, int n, double r) {
  if (std::filesystem::is_regular_file(arg)) {
    std::ifstream in(arg);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      return parse_body_specs(ss.str());
    } catch (const Error& e) {
      throw Error(e.kind(), arg + ": " + e.what());
    }
  }
  std::vector<BodySpec> out;
  std::stringstream ss(arg);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw Error(ErrorKind::Parse, "empty body name in '" + arg + "'");
    out.push_back({named_body(item, n, r), item});
  }
  if (out.empty()) throw Error(ErrorKind::Parse, "no body given");
  return out;
}

}  // namespace convbody
