#include "convbody/serialization.hpp"

#include <charconv>
#include <cmath>
#include <json.hpp>
#include <sstream>

#include "convbody/config.hpp"
#include "convbody/errors.hpp"
#include "convbody/version.hpp"

namespace convbody {
namespace {

using nlohmann::json;

constexpr const char* kFormat = "convbody-radial";
constexpr int kFormatVersion = 1;

json tolerances_json() {
  const auto& t = kTolerances;
  return json{{"facet_slack", t.facet_slack},
              {"vertex_dedup", t.vertex_dedup},
              {"degenerate_volume", t.degenerate_volume},
              {"maximizer_ratio", t.maximizer_ratio},
              {"nm_rel_tol", t.nm_rel_tol},
              {"root_rel_tol", t.root_rel_tol},
              {"derivative_step", t.derivative_step},
              {"unbounded_derivative", t.unbounded_derivative},
              {"inclusion_slack", t.inclusion_slack},
              {"report_abs", t.report_abs},
              {"equality_detect", t.equality_detect},
              {"fubini_rel", t.fubini_rel},
              {"mc_samples", t.mc_samples}};
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string describe_grid(const SphereGrid& grid) {
  std::ostringstream os;
  os << to_string(grid.kind()) << " n=" << grid.dim() << " size=" << grid.size()
     << " seed=" << grid.seed();
  return os.str();
}

std::string radial_body_to_text(const RadialBody& rb, uint64_t seed) {
  json radii = json::array();
  json unbounded = json::array();
  for (size_t i = 0; i < rb.radii.size(); ++i) {
    radii.push_back(number_or_null(rb.radii[i]));
    if (rb.unbounded[i]) unbounded.push_back(i);
  }
  json j{{"format", kFormat},
         {"version", kFormatVersion},
         {"tool_version", kVersion},
         {"seed", seed},
         {"dim", rb.dim},
         {"center", std::vector<double>(rb.center.data(), rb.center.data() + rb.center.size())},
         {"theta", rb.theta ? json(*rb.theta) : json(nullptr)},
         {"grid",
          {{"kind", to_string(rb.grid.kind())}, {"size", rb.grid.size()}, {"seed", rb.grid.seed()}}},
         {"radii", radii},
         {"unbounded", unbounded},
         {"tolerances", tolerances_json()}};
  return j.dump(1) + "\n";
}

RadialBody radial_body_from_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, std::string("radial body: ") + e.what());
  }
  try {
    if (j.at("format") != kFormat) throw Error(ErrorKind::Parse, "radial body: unknown format");
    if (j.at("version").get<int>() != kFormatVersion) {
      throw Error(ErrorKind::Parse, "radial body: unsupported version");
    }
    RadialBody rb;
    rb.dim = j.at("dim").get<int>();
    const auto center = j.at("center").get<std::vector<double>>();
    rb.center = Eigen::Map<const Vector>(center.data(), static_cast<Eigen::Index>(center.size()));
    if (!j.at("theta").is_null()) rb.theta = j.at("theta").get<double>();
    const auto& g = j.at("grid");
    rb.grid = SphereGrid::make(rb.dim, g.at("size").get<int>(), g.at("seed").get<uint64_t>());
    if (g.at("kind").get<std::string>() != to_string(rb.grid.kind())) {
      throw Error(ErrorKind::Parse, "radial body: grid kind does not match dimension");
    }
    const auto& radii = j.at("radii");
    if (static_cast<int>(radii.size()) != rb.grid.size()) {
      throw Error(ErrorKind::Parse, "radial body: radii count differs from grid size");
    }
    rb.unbounded.assign(radii.size(), 0);
    for (const auto& i : j.at("unbounded")) rb.unbounded.at(i.get<size_t>()) = 1;
    for (size_t i = 0; i < radii.size(); ++i) {
      rb.radii.push_back(radii[i].is_null() ? std::numeric_limits<double>::infinity()
                                            : radii[i].get<double>());
    }
    return rb;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("radial body: ") + e.what());
  } catch (const std::out_of_range& e) {
    throw Error(ErrorKind::Parse, "radial body: unbounded index out of range");
  }
}

std::string csv_header(uint64_t seed, const std::string& grid_description) {
  std::ostringstream os;
  os << "# convbody " << kVersion << "\n";
  os << "# seed " << seed << "\n";
  os << "# grid " << grid_description << "\n";
  os << "# tolerances " << tolerances_json().dump() << "\n";
  return os.str();
}

std::string reports_to_csv(const std::vector<InequalityReport>& reports) {
  std::ostringstream os;
  os << "name,inputs,n,theta,lhs,rhs,slack,tightness,tol,mc_error,quad_error,passed,skipped,seed,"
        "note\n";
  for (const auto& r : reports) {
    os << csv_field(r.name) << ',' << csv_field(r.inputs) << ',' << r.n << ','
       << (r.theta < 0 ? std::string() : format_double(r.theta)) << ',' << format_double(r.lhs)
       << ',' << format_double(r.rhs) << ',' << format_double(r.slack) << ','
       << format_double(r.tightness) << ',' << format_double(r.tol) << ','
       << format_double(r.mc_error) << ',' << format_double(r.quad_error) << ','
       << (r.passed ? 1 : 0) << ',' << (r.skipped ? 1 : 0) << ',' << r.seed << ','
       << csv_field(r.note) << '\n';
  }
  return os.str();
}

std::string reports_to_json(const std::vector<InequalityReport>& reports, uint64_t seed,
                            const std::string& grid_description) {
  json arr = json::array();
  for (const auto& r : reports) {
    arr.push_back({{"name", r.name},
                   {"inputs", r.inputs},
                   {"n", r.n},
                   {"theta", r.theta < 0 ? json(nullptr) : json(r.theta)},
                   {"lhs", number_or_null(r.lhs)},
                   {"rhs", number_or_null(r.rhs)},
                   {"slack", number_or_null(r.slack)},
                   {"tightness", number_or_null(r.tightness)},
                   {"tol", r.tol},
                   {"mc_error", r.mc_error},
                   {"quad_error", r.quad_error},
                   {"passed", r.passed},
                   {"skipped", r.skipped},
                   {"seed", r.seed},
                   {"note", r.note}});
  }
  json j{{"tool_version", kVersion},
         {"seed", seed},
         {"grid", grid_description},
         {"tolerances", tolerances_json()},
         {"reports", arr}};
  return j.dump(1) + "\n";
}

}  // namespace convbody
