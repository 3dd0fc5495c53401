#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "convbody/body_spec.hpp"
#include "convbody/errors.hpp"
#include "convbody/inequalities.hpp"
#include "convbody/oracles.hpp"
#include "convbody/projbody.hpp"
#include "convbody/serialization.hpp"
#include "convbody/version.hpp"

namespace convbody::cli {
namespace {

struct Options {
  int n = 2;
  std::string thetas;
  int theta_grid = 0;
  int dirs = 0;
  std::optional<uint64_t> seed;
  std::optional<double> tol;
  std::string out_path;
  std::string k, l, bodies;
  double r = 1.0;
  int fuzz = 0;
  std::string positional;
  double x = 0.0;
  bool has_x = false;
};

uint64_t resolve_seed(const Options& o) {
  if (o.seed) return *o.seed;
  if (const char* env = std::getenv("CONVBODY_SEED")) {
    try {
      size_t pos = 0;
      const auto v = std::stoull(env, &pos);
      if (pos == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw Error(ErrorKind::Parse, "CONVBODY_SEED is not an unsigned integer");
  }
  return kDefaultSeed;
}

std::vector<double> parse_thetas(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t pos = 0;
    double t = 0.0;
    try {
      t = std::stod(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != item.size()) throw Error(ErrorKind::Parse, "bad theta '" + item + "'");
    if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorKind::InvalidArgument, "theta must lie in [0, 1]");
    out.push_back(t);
  }
  return out;
}

// Explicit --theta wins; otherwise k/N for k = 1..N−1; otherwise the fallback.
std::vector<double> theta_values(const Options& o, std::vector<double> fallback) {
  if (!o.thetas.empty()) return parse_thetas(o.thetas);
  if (o.theta_grid > 1) {
    std::vector<double> t;
    for (int k = 1; k < o.theta_grid; ++k) t.push_back(static_cast<double>(k) / o.theta_grid);
    return t;
  }
  return fallback;
}

double single_theta(const Options& o) {
  const auto t = theta_values(o, {});
  if (t.size() != 1) throw Error(ErrorKind::Parse, "exactly one --theta value is required");
  return t[0];
}

ConvexBody one_body(const std::string& arg, const Options& o, const char* flag) {
  if (arg.empty()) throw Error(ErrorKind::Parse, std::string("missing ") + flag);
  auto specs = load_bodies(arg, o.n, o.r);
  if (specs.size() != 1) throw Error(ErrorKind::Parse, std::string(flag) + " must name one body");
  return specs[0].body;
}

SphereGrid grid_for(int n, const Options& o, uint64_t seed) {
  return SphereGrid::make(n, o.dirs, seed);
}

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out_path, std::ios::binary);
  if (!f) throw Error(ErrorKind::Resource, "cannot write " + o.out_path);
  f << text;
}

std::string fmt(double v) { return format_double(v); }

int cmd_volume(const Options& o, std::ostream& out) {
  const std::string arg = !o.positional.empty() ? o.positional : o.k;
  const auto body = one_body(arg, o, "body");
  out << "volume " << fmt(volume(body)) << "\n";
  out << "method exact\n";
  return kOk;
}

int cmd_theta_body(const Options& o, std::ostream& out) {
  const uint64_t seed = resolve_seed(o);
  const double theta = single_theta(o);
  if (theta >= 1.0) throw Error(ErrorKind::InvalidArgument, "theta-body needs theta < 1");
  const auto pair = normalize(one_body(o.k, o, "--K"), one_body(o.l, o, "--L"));
  const auto grid = grid_for(pair.dim(), o, seed);
  const auto rb = theta_body(pair, theta, grid);
  const auto v = radial_volume(rb);
  out << "M " << fmt(pair.M) << "\n";
  out << "theta " << fmt(theta) << "\n";
  out << "grid " << describe_grid(grid) << "\n";
  out << "volume " << fmt(v.value) << " stderr " << fmt(v.std_error) << "\n";
  if (!o.out_path.empty()) emit(o, radial_body_to_text(rb, seed), out);
  return kOk;
}

int cmd_limit_body(const Options& o, std::ostream& out) {
  const uint64_t seed = resolve_seed(o);
  const auto pair = normalize(one_body(o.k, o, "--K"), one_body(o.l, o, "--L"));
  const auto grid = grid_for(pair.dim(), o, seed);
  const auto rb = limit_body(pair, grid);
  int unbounded = 0;
  for (char u : rb.unbounded) unbounded += u ? 1 : 0;
  out << "M " << fmt(pair.M) << "\n";
  out << "grid " << describe_grid(grid) << "\n";
  out << "unbounded_directions " << unbounded << "\n";
  if (unbounded == 0) {
    const auto v = radial_volume(rb);
    out << "volume " << fmt(v.value) << " stderr " << fmt(v.std_error) << "\n";
  } else {
    out << "volume inf\n";
  }
  if (!o.out_path.empty()) emit(o, radial_body_to_text(rb, seed), out);
  return kOk;
}

int cmd_proj_body(const Options& o, std::ostream& out) {
  const uint64_t seed = resolve_seed(o);
  const auto body = one_body(!o.positional.empty() ? o.positional : o.k, o, "--K");
  const auto grid = grid_for(body.dim(), o, seed);
  const auto rb = polar_projection_body(body, grid);
  const auto v = radial_volume(rb);
  const auto pz = petty_zhang_functional(body, grid);
  out << "grid " << describe_grid(grid) << "\n";
  out << "volume " << fmt(v.value) << " stderr " << fmt(v.std_error) << "\n";
  out << "functional " << fmt(pz.value) << " stderr " << fmt(pz.std_error) << "\n";
  if (!o.out_path.empty()) emit(o, radial_body_to_text(rb, seed), out);
  return kOk;
}

std::vector<ConvexBody> tuple_bodies(const Options& o) {
  if (o.bodies.empty()) throw Error(ErrorKind::Parse, "missing --bodies");
  std::vector<ConvexBody> out;
  for (auto& s : load_bodies(o.bodies, o.n, o.r)) out.push_back(s.body);
  if (out.size() < 2) throw Error(ErrorKind::Parse, "--bodies needs at least two bodies");
  return out;
}

int cmd_mfold(const Options& o, std::ostream& out) {
  const uint64_t seed = resolve_seed(o);
  const auto bodies = tuple_bodies(o);
  const int n = bodies[0].dim();
  if (o.has_x) {
    if (n != 1) throw Error(ErrorKind::InvalidArgument, "--x is only accepted for n = 1");
    out << "value " << fmt(mfold_value(bodies, Vector::Constant(1, o.x))) << "\n";
    return kOk;
  }
  const auto tuple = mfold_normalize(bodies);
  out << "M " << fmt(tuple.M) << "\n";
  const auto thetas = theta_values(o, {});
  if (thetas.empty()) return kOk;
  const auto grid = grid_for(n, o, seed);
  out << "grid " << describe_grid(grid) << "\n";
  std::string file;
  for (double t : thetas) {
    if (t >= 1.0) throw Error(ErrorKind::InvalidArgument, "mfold needs theta < 1");
    const auto rb = mfold_theta_body(tuple, t, grid);
    const auto v = radial_volume(rb);
    out << "theta " << fmt(t) << " volume " << fmt(v.value) << " stderr " << fmt(v.std_error)
        << "\n";
    if (thetas.size() == 1) file = radial_body_to_text(rb, seed);
  }
  if (!o.out_path.empty() && !file.empty()) emit(o, file, out);
  return kOk;
}

std::vector<std::string> check_names(const std::string& arg) {
  if (arg.empty()) throw Error(ErrorKind::Parse, "missing check name");
  std::vector<std::string> names;
  if (arg == "all") return known_checks();
  std::stringstream ss(arg);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (std::find(known_checks().begin(), known_checks().end(), item) == known_checks().end()) {
      throw Error(ErrorKind::Parse, "unknown check '" + item + "'");
    }
    names.push_back(item);
  }
  return names;
}

void apply_tol_override(std::vector<InequalityReport>& reports, const Options& o) {
  if (!o.tol) return;
  for (auto& r : reports) {
    if (r.skipped) continue;
    r.tol = std::max(r.tol, *o.tol);
    r.passed = r.slack >= -r.tol;
  }
}

int finish_reports(std::vector<InequalityReport>& reports, const Options& o, uint64_t seed,
                   const std::string& grid, std::ostream& out, std::ostream& err) {
  apply_tol_override(reports, o);
  int failed = 0, skipped = 0;
  for (const auto& r : reports) {
    failed += r.passed ? 0 : 1;
    skipped += r.skipped ? 1 : 0;
  }
  emit(o, csv_header(seed, grid) + reports_to_csv(reports), out);
  err << "reports " << reports.size() << " failed " << failed << " skipped " << skipped << "\n";
  return failed == 0 ? kOk : kCheckFailed;
}

int cmd_check(const Options& o, std::ostream& out, std::ostream& err) {
  const uint64_t seed = resolve_seed(o);
  const auto names = check_names(o.positional);
  auto wants = [&](const char* c) { return std::find(names.begin(), names.end(), c) != names.end(); };
  const auto thetas = theta_values(o, {0.2, 0.5, 0.8});
  CheckOptions co;
  co.seed = seed;
  std::vector<InequalityReport> reports;

  if (o.fuzz > 0) {
    FuzzOptions fo;
    fo.checks.clear();
    for (const auto& c : names) {
      if (c != "mfold") fo.checks.push_back(c);
    }
    fo.thetas = thetas;
    fo.directions = o.dirs;
    fo.check = co;
    reports = fuzz(seed, o.n, o.fuzz, fo);
    int dirs = o.dirs > 0 ? o.dirs : (o.n == 2 ? 1024 : (o.n == 3 ? 4000 : 2));
    return finish_reports(reports, o, seed, describe_grid(SphereGrid::make(o.n, dirs, seed)), out,
                          err);
  }

  std::string grid_desc;
  if (!o.bodies.empty()) {
    const auto tuple = mfold_normalize(tuple_bodies(o));
    const auto grid = grid_for(tuple.dim(), o, seed);
    grid_desc = describe_grid(grid);
    for (double t : thetas) {
      for (auto& r : check_mfold(tuple, t, grid, co)) reports.push_back(r);
    }
  } else {
    const auto pair = normalize(one_body(o.k, o, "--K"), one_body(o.l, o, "--L"));
    const auto grid = grid_for(pair.dim(), o, seed);
    grid_desc = describe_grid(grid);
    if (o.theta_grid > 0) co.theta_grid = o.theta_grid;
    for (double t : thetas) {
      if (wants("bm")) reports.push_back(check_bm_theta(pair, t, grid, co));
      if (wants("forms")) {
        for (auto& r : check_equivalent_forms(pair, t, 0.5, grid, co)) reports.push_back(r);
      }
      if (wants("chain")) {
        for (auto& r : check_inclusion_chain(pair, t, grid, co)) reports.push_back(r);
      }
    }
    if (wants("monotone")) reports.push_back(check_monotonicity(pair, thetas, grid, co));
    if (wants("zhang")) {
      for (auto& r : check_zhang_extension(pair, grid, co)) reports.push_back(r);
    }
    if (wants("rs")) reports.push_back(check_rogers_shephard(pair, co));
  }
  return finish_reports(reports, o, seed, grid_desc, out, err);
}

int cmd_fuzz(const Options& o, std::ostream& out, std::ostream& err) {
  Options copy = o;
  copy.positional = o.positional.empty() ? "all" : o.positional;
  if (copy.fuzz <= 0) copy.fuzz = 50;
  return cmd_check(copy, out, err);
}

// Columns: θ, then pipeline quotient and oracle for each family, then the
// user pair when given.
int cmd_sweep(const Options& o, std::ostream& out) {
  const uint64_t seed = resolve_seed(o);
  const int n = o.n;
  const auto thetas = theta_values(o, {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9});
  const auto grid = grid_for(n, o, seed);

  auto quotient = [n](const NormalizedPair& p, double v) {
    return std::pow(v, 1.0 / n) / (std::pow(volume(p.K), 1.0 / n) + std::pow(volume(p.L), 1.0 / n));
  };
  const auto cube = normalize(ConvexBody::cube(n), ConvexBody::cube(n));
  const auto ball = normalize(ConvexBody::ball(Vector::Zero(n), 1.0),
                              ConvexBody::ball(Vector::Zero(n), 1.0));
  const auto simplex = ConvexBody::simplex(n);
  const auto simp = normalize(simplex, reflect(simplex));
  std::optional<NormalizedPair> user;
  if (!o.k.empty() || !o.l.empty()) user = normalize(one_body(o.k, o, "--K"), one_body(o.l, o, "--L"));

  std::ostringstream csv;
  csv << csv_header(seed, describe_grid(grid));
  csv << "theta,cube,cube_oracle,ball,ball_oracle,simplex,simplex_oracle";
  if (user) csv << ",user";
  csv << "\n";
  auto vol = [&](const NormalizedPair& p, double t) { return radial_volume(theta_body(p, t, grid)).value; };
  for (double t : thetas) {
    if (t >= 1.0) throw Error(ErrorKind::InvalidArgument, "sweep needs theta < 1");
    csv << fmt(t) << ',' << fmt(quotient(cube, vol(cube, t))) << ','
        << fmt(oracles::cube_quotient(n, t)) << ',' << fmt(quotient(ball, vol(ball, t))) << ','
        << fmt(oracles::ball_R(n, t)) << ',' << fmt(quotient(simp, vol(simp, t))) << ','
        << fmt(oracles::simplex_quotient(n, t));
    if (user) csv << ',' << fmt(quotient(*user, vol(*user, t)));
    csv << "\n";
  }
  emit(o, csv.str(), out);
  return kOk;
}

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse:
    case ErrorKind::InvalidArgument:
    case ErrorKind::DimensionMismatch:
      return kUsage;
    default:
      return kNumeric;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"convbody: convolution bodies of convex sets", "convbody"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* c) {
    c->add_option("--n", o.n, "Dimension for built-in bodies")->check(CLI::Range(1, 8));
    c->add_option("--theta", o.thetas, "Theta value(s), comma separated");
    c->add_option("--theta-grid", o.theta_grid, "Theta grid k/N, k = 1..N-1; trapezoid intervals for check")
        ->check(CLI::PositiveNumber);
    c->add_option("--dirs", o.dirs, "Number of sphere directions")->check(CLI::NonNegativeNumber);
    c->add_option("--seed", o.seed, "Seed (falls back to CONVBODY_SEED, then 42)");
    c->add_option("--tol", o.tol, "Minimum accepted violation for checks")->check(CLI::NonNegativeNumber);
    c->add_option("--out", o.out_path, "Output file");
    c->add_option("--K", o.k, "Spec file or built-in body");
    c->add_option("--L", o.l, "Spec file or built-in body");
    c->add_option("--bodies", o.bodies, "Spec file or comma-separated built-in bodies");
    c->add_option("--r", o.r, "Ball radius for built-in balls")->check(CLI::PositiveNumber);
  };

  auto* volume_cmd = app.add_subcommand("volume", "Exact volume of a body");
  volume_cmd->add_option("body", o.positional, "Spec file or built-in body");
  auto* theta_cmd = app.add_subcommand("theta-body", "Theta-convolution body of K and L");
  auto* limit_cmd = app.add_subcommand("limit-body", "Limiting convolution body C1(K, L)");
  auto* proj_cmd = app.add_subcommand("proj-body", "Polar projection body");
  proj_cmd->add_option("body", o.positional, "Spec file or built-in body");
  auto* mfold_cmd = app.add_subcommand("mfold", "m-fold convolution bodies");
  mfold_cmd->add_option("--x", o.x, "Evaluate the m-fold convolution at x (n = 1)")
      ->each([&](const std::string&) { o.has_x = true; });
  auto* check_cmd = app.add_subcommand("check", "Evaluate inequalities, CSV report");
  check_cmd->add_option("checks", o.positional, "Comma-separated check names or 'all'")->required();
  check_cmd->add_option("--fuzz", o.fuzz, "Run on this many random pairs")->check(CLI::NonNegativeNumber);
  auto* sweep_cmd = app.add_subcommand("sweep", "Quotient sweep across theta");
  auto* fuzz_cmd = app.add_subcommand("fuzz", "Random-pair inequality fuzzing");
  fuzz_cmd->add_option("checks", o.positional, "Comma-separated check names or 'all'");
  fuzz_cmd->add_option("--count,--fuzz", o.fuzz, "Number of random pairs")->check(CLI::PositiveNumber);
  for (auto* c : {volume_cmd, theta_cmd, limit_cmd, proj_cmd, mfold_cmd, check_cmd, sweep_cmd, fuzz_cmd}) {
    common(c);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*volume_cmd) return cmd_volume(o, out);
    if (*theta_cmd) return cmd_theta_body(o, out);
    if (*limit_cmd) return cmd_limit_body(o, out);
    if (*proj_cmd) return cmd_proj_body(o, out);
    if (*mfold_cmd) return cmd_mfold(o, out);
    if (*check_cmd) return cmd_check(o, out, err);
    if (*sweep_cmd) return cmd_sweep(o, out);
    if (*fuzz_cmd) return cmd_fuzz(o, out, err);
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kNumeric;
  }
  return kUsage;
}

}  // namespace convbody::cli
