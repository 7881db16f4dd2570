#pragma once

// Command-line front end. Kept in a header so the test suite can drive run()
// in-process; main.cpp only forwards argv.
//
// Exit codes: 0 ok, 2 validation, 3 solver failure, 4 oracle positivity.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <regex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <cmgd/cmgd.hpp>

namespace cmgd::cli {

using nlohmann::json;

enum ExitCode : int { kOk = 0, kValidation = 2, kSolver = 3, kPositivity = 4 };

class ValidationError : public Error {
 public:
  using Error::Error;
};

struct Problem {
  State left;
  State right;
  std::optional<Params> params;
  json raw;
};

// ---------------------------------------------------------------- parsing

inline double number_at(const json& j, const char* key, const char* where) {
  if (!j.is_object() || !j.contains(key)) {
    throw ValidationError(std::string(where) + ": missing field '" + key + "'");
  }
  const json& v = j.at(key);
  if (!v.is_number()) throw ValidationError(std::string(where) + "." + key + " must be a number");
  return v.get<double>();
}

inline State parse_state(const json& j, const char* where) {
  State s{number_at(j, "rho", where), number_at(j, "u", where)};
  if (!(s.rho > 0.0) || !std::isfinite(s.rho)) {
    throw ValidationError(std::string(where) + ".rho must be positive and finite");
  }
  if (!std::isfinite(s.u)) throw ValidationError(std::string(where) + ".u must be finite");
  return s;
}

inline Problem parse_problem(const json& j) {
  if (!j.is_object()) throw ValidationError("problem: top level must be an object");
  if (!j.contains("left") || !j.contains("right")) throw ValidationError("problem: need 'left' and 'right'");
  Problem p;
  p.left = parse_state(j.at("left"), "left");
  p.right = parse_state(j.at("right"), "right");
  if (j.contains("params")) {
    const json& q = j.at("params");
    try {
      p.params = Params(number_at(q, "k1", "params"), number_at(q, "k2", "params"), number_at(q, "mu", "params"));
    } catch (const DomainError& e) {
      throw ValidationError(e.what());
    }
  }
  p.raw = j;
  return p;
}

inline Problem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open problem file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("problem file is not valid JSON: ") + e.what());
  }
  return parse_problem(j);
}

inline const Params& require_params(const Problem& p) {
  if (!p.params) throw ValidationError("problem: this command needs a 'params' block");
  return *p.params;
}

struct XiRange {
  double a = -2.0;
  double b = 2.0;
  int n = 101;

  std::vector<double> grid() const {
    std::vector<double> xi(n);
    for (int i = 0; i < n; ++i) xi[i] = a + (b - a) * i / (n - 1);
    xi.back() = b;
    return xi;
  }
};

inline XiRange parse_xi_range(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
  if (parts.size() != 3) throw ValidationError("--xi-range expects a,b,n");
  XiRange r;
  try {
    std::size_t used = 0;
    r.a = std::stod(parts[0]);
    r.b = std::stod(parts[1]);
    const long n = std::stol(parts[2], &used);
    if (used != parts[2].size()) throw ValidationError("--xi-range: n must be an integer");
    r.n = static_cast<int>(n);
  } catch (const std::logic_error&) {
    throw ValidationError("--xi-range: cannot parse '" + text + "'");
  }
  if (!(r.a < r.b) || !std::isfinite(r.a) || !std::isfinite(r.b)) throw ValidationError("--xi-range: need a < b");
  if (r.n < 2) throw ValidationError("--xi-range: need n >= 2");
  return r;
}

inline LimitPath::Power parse_power(const std::string& text) {
  static const std::regex re(R"(^\s*(?:([0-9.eE+\-]+)\s*\*\s*)?eps(?:\s*\^\s*([0-9.eE+\-]+))?\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) {
    throw ValidationError("--path: cannot parse '" + text + "', expected [c*]eps[^p]");
  }
  LimitPath::Power p;
  try {
    if (m[1].matched) p.coefficient = std::stod(m[1].str());
    if (m[2].matched) p.exponent = std::stod(m[2].str());
  } catch (const std::logic_error&) {
    throw ValidationError("--path: bad number in '" + text + "'");
  }
  return p;
}

/// Presets: default (k1 = k2 = eps), k1-fast (eps^2, eps), k2-fast (eps, eps^2);
/// otherwise "k1expr,k2expr" with each expression of the form [c*]eps[^p].
inline LimitPath parse_path(const std::string& text) {
  if (text.empty() || text == "default" || text == "linear") return LimitPath::linear();
  try {
    if (text == "k1-fast") return {{1.0, 2.0}, {1.0, 1.0}, "k1-fast"};
    if (text == "k2-fast") return {{1.0, 1.0}, {1.0, 2.0}, "k2-fast"};
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw ValidationError("--path: expected a preset or 'k1expr,k2expr'");
    return {parse_power(text.substr(0, comma)), parse_power(text.substr(comma + 1))};
  } catch (const DomainError& e) {
    throw ValidationError(e.what());
  }
}

inline unsigned thread_budget() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SOLVER_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

// ---------------------------------------------------------------- output

inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_csv_row(std::ostream& os, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) os << ',';
    os << fmt17(v);
    first = false;
  }
  os << '\n';
}

inline json to_json(const State& s) { return {{"rho", s.rho}, {"u", s.u}}; }

inline json to_json(const Params& p) { return {{"k1", p.k1()}, {"k2", p.k2()}, {"mu", p.mu()}}; }

inline json to_json(const Wave& w, const Params& params) {
  if (const auto* s = std::get_if<Shock>(&w)) {
    const auto rh = rankine_hugoniot_residual(*s, params);
    return {{"family", to_string(s->family)},
            {"kind", "shock"},
            {"speed", s->speed},
            {"left", to_json(s->left)},
            {"right", to_json(s->right)},
            {"rh_residual", {{"mass", rh[0]}, {"momentum", rh[1]}}},
            {"lax", satisfies_lax(*s, params)}};
  }
  const auto& r = std::get<Rarefaction>(w);
  return {{"family", to_string(r.family)},
          {"kind", "rarefaction"},
          {"xi_begin", r.xi_begin},
          {"xi_end", r.xi_end},
          {"head_speed", r.head_speed()},
          {"tail_speed", r.tail_speed()},
          {"state_begin", to_json(r.state_begin)},
          {"state_end", to_json(r.state_end)}};
}

inline json to_json(const WaveFan& fan) {
  return {{"region", to_string(fan.region)},
          {"params", to_json(fan.params)},
          {"left", to_json(fan.left)},
          {"star", to_json(fan.star)},
          {"right", to_json(fan.right)},
          {"sigma1", characteristic_speed(fan.wave1)},
          {"sigma2", characteristic_speed(fan.wave2)},
          {"zero_strength", fan.left == fan.right},
          {"waves", {to_json(fan.wave1, fan.params), to_json(fan.wave2, fan.params)}}};
}

inline CurveFamily family_from(const std::string& s) {
  if (s == "R1") return CurveFamily::R1;
  if (s == "R2") return CurveFamily::R2;
  if (s == "S1") return CurveFamily::S1;
  if (s == "S2") return CurveFamily::S2;
  throw ValidationError("fan: unknown wave family '" + s + "'");
}

inline Region region_from(const std::string& s) {
  if (s == "I") return Region::I;
  if (s == "II") return Region::II;
  if (s == "III") return Region::III;
  if (s == "IV") return Region::IV;
  throw ValidationError("fan: unknown region '" + s + "'");
}

inline Wave wave_from_json(const json& j) {
  const CurveFamily family = family_from(j.at("family").get<std::string>());
  if (is_shock(family)) {
    return Shock{family, j.at("speed").get<double>(), parse_state(j.at("left"), "shock.left"),
                 parse_state(j.at("right"), "shock.right")};
  }
  return Rarefaction{family, j.at("xi_begin").get<double>(), j.at("xi_end").get<double>(),
                     parse_state(j.at("state_begin"), "rarefaction.state_begin"),
                     parse_state(j.at("state_end"), "rarefaction.state_end")};
}

/// Rebuild a fan from the report written by the solve command.
inline WaveFan fan_from_json(const json& j) {
  try {
    const json& q = j.at("params");
    const Params params(q.at("k1").get<double>(), q.at("k2").get<double>(), q.at("mu").get<double>());
    const json& waves = j.at("waves");
    if (!waves.is_array() || waves.size() != 2) throw ValidationError("fan: 'waves' must hold two entries");
    return WaveFan{params,
                   parse_state(j.at("left"), "left"),
                   wave_from_json(waves[0]),
                   parse_state(j.at("star"), "star"),
                   wave_from_json(waves[1]),
                   parse_state(j.at("right"), "right"),
                   region_from(j.at("region").get<std::string>())};
  } catch (const json::exception& e) {
    throw ValidationError(std::string("fan: malformed report: ") + e.what());
  } catch (const DomainError& e) {
    throw ValidationError(e.what());
  }
}

inline json to_json(const TransportSolution& sol) {
  json j{{"left", {{"rho", sol.left.rho}, {"u", sol.left.u}}}, {"right", {{"rho", sol.right.rho}, {"u", sol.right.u}}}};
  if (const auto* d = std::get_if<DeltaShock>(&sol.wave)) {
    j["wave"] = "delta_shock";
    j["sigma"] = d->sigma;
    j["weight_rate"] = d->weight_rate;
    j["u_delta"] = d->u_delta;
    j["entropy"] = satisfies_entropy(sol);
  } else if (const auto* v = std::get_if<VacuumFan>(&sol.wave)) {
    j["wave"] = "vacuum";
    j["u_left"] = v->u_left;
    j["u_right"] = v->u_right;
  } else {
    j["wave"] = "contact";
    j["speed"] = std::get<Contact>(sol.wave).speed;
  }
  return j;
}

inline json to_json(const SweepRow& r) {
  return {{"eps", r.eps},
          {"k1", r.k1},
          {"k2", r.k2},
          {"rho_star", r.rho_star},
          {"u_star", r.u_star},
          {"sigma1", r.sigma1},
          {"sigma2", r.sigma2},
          {"k2_rho_star", r.k2_rho_star},
          {"mass_rate", r.mass_rate},
          {"lambda1_star", r.lambda1_star},
          {"lambda2_star", r.lambda2_star},
          {"region", to_string(r.region)}};
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path.string() + "'");
  out << text;
}

inline std::filesystem::path prepare_out_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ValidationError("cannot create output directory '" + dir + "': " + ec.message());
  return dir;
}

// ---------------------------------------------------------------- commands

struct Options {
  std::string problem;
  std::string fan;
  std::string out;
  std::vector<double> eps;
  std::string path;
  std::vector<int> grid;
  std::optional<double> cfl;
  std::optional<double> t_end;
  std::string xi_range;
  std::optional<double> tol;
};

inline SolveOptions solve_options(const Options& o, const Problem& p) {
  SolveOptions s;
  if (o.tol) {
    s.tol = *o.tol;
  } else if (p.raw.contains("tol")) {
    s.tol = number_at(p.raw, "tol", "problem");
  }
  if (!(s.tol > 0.0)) throw ValidationError("--tol must be positive");
  return s;
}

inline XiRange xi_range_of(const Options& o, const Problem* p) {
  if (!o.xi_range.empty()) return parse_xi_range(o.xi_range);
  XiRange r;
  if (p != nullptr && p->raw.contains("sample")) {
    const json& s = p->raw.at("sample");
    r.a = number_at(s, "xi_min", "sample");
    r.b = number_at(s, "xi_max", "sample");
    r.n = static_cast<int>(number_at(s, "n", "sample"));
    if (!(r.a < r.b)) throw ValidationError("sample: need xi_min < xi_max");
    if (r.n < 2) throw ValidationError("sample: need n >= 2");
  }
  return r;
}

inline int cmd_solve(const Options& o, std::ostream& out) {
  const Problem p = load_problem(o.problem);
  const Params& params = require_params(p);
  const SolveOptions so = solve_options(o, p);
  const WaveFan fan = solve(p.left, p.right, params, so);
  json report = to_json(fan);
  if (p.raw.contains("test_function")) {
    const json& t = p.raw.at("test_function");
    const TestFunction psi(number_at(t, "center", "test_function"), number_at(t, "radius", "test_function"));
    const WeakResidual r = weak_residual(fan, params, psi, so.quadrature);
    report["weak_residual"] = {{"mass", r.mass}, {"momentum", r.momentum}};
  }
  const std::string text = report.dump(2) + "\n";
  if (!o.out.empty()) write_file(prepare_out_dir(o.out) / "solve.json", text);
  out << text;
  return kOk;
}

inline std::string transport_profile_csv(const TransportSolution& sol, const std::vector<double>& xi) {
  std::ostringstream os;
  os << "xi,rho,u,p,B\n";
  for (double x : xi) {
    const TransportSample s = sample_transport(sol, x);
    write_csv_row(os, {x, s.state.rho, s.state.u, 0.0, 0.0});
  }
  return os.str();
}

inline json delta_sidecar(const TransportSolution& sol) {
  json markers = json::array();
  if (const auto* d = std::get_if<DeltaShock>(&sol.wave)) {
    markers.push_back({{"sigma", d->sigma}, {"weight_rate", d->weight_rate}});
  }
  return {{"delta_markers", markers}};
}

inline int cmd_sample(const Options& o, std::ostream& out) {
  std::optional<Problem> p;
  if (!o.problem.empty()) p = load_problem(o.problem);
  const XiRange range = xi_range_of(o, p ? &*p : nullptr);
  const std::vector<double> xi = range.grid();
  const auto dir = prepare_out_dir(o.out.empty() ? "." : o.out);
  json manifest{{"xi_min", range.a}, {"xi_max", range.b}, {"n", range.n}};

  if (p && !p->params && o.fan.empty()) {
    const TransportSolution sol = solve_transport({p->left.rho, p->left.u}, {p->right.rho, p->right.u});
    write_file(dir / "profile.csv", transport_profile_csv(sol, xi));
    write_file(dir / "delta_markers.json", delta_sidecar(sol).dump(2) + "\n");
    manifest["mode"] = "transport";
    manifest["profile"] = (dir / "profile.csv").string();
    manifest["sidecar"] = (dir / "delta_markers.json").string();
    out << manifest.dump(2) << "\n";
    return kOk;
  }

  WaveFan fan = [&] {
    if (!o.fan.empty()) {
      std::ifstream in(o.fan);
      if (!in) throw ValidationError("cannot open fan file '" + o.fan + "'");
      try {
        return fan_from_json(json::parse(in));
      } catch (const json::parse_error& e) {
        throw ValidationError(std::string("fan file is not valid JSON: ") + e.what());
      }
    }
    if (!p) throw ValidationError("sample: need --problem or --fan");
    return solve(p->left, p->right, require_params(*p), solve_options(o, *p));
  }();

  const Profile prof = sample_profile(fan, xi);
  std::ostringstream os;
  os << "xi,rho,u,p,B\n";
  for (std::size_t i = 0; i < xi.size(); ++i) {
    const State& s = prof.states[i];
    write_csv_row(os, {xi[i], s.rho, s.u, pressure(s.rho, fan.params), magnetic_field(s.rho, fan.params)});
  }
  write_file(dir / "profile.csv", os.str());
  manifest["mode"] = "magnetogasdynamic";
  manifest["region"] = to_string(fan.region);
  manifest["profile"] = (dir / "profile.csv").string();
  out << manifest.dump(2) << "\n";
  return kOk;
}

inline int cmd_transport(const Options& o, std::ostream& out) {
  const Problem p = load_problem(o.problem);
  const TransportSolution sol = solve_transport({p.left.rho, p.left.u}, {p.right.rho, p.right.u});
  json report = to_json(sol);
  if (!o.xi_range.empty() || p.raw.contains("sample")) {
    const auto dir = prepare_out_dir(o.out.empty() ? "." : o.out);
    write_file(dir / "profile.csv", transport_profile_csv(sol, xi_range_of(o, &p).grid()));
    write_file(dir / "delta_markers.json", delta_sidecar(sol).dump(2) + "\n");
    report["profile"] = (dir / "profile.csv").string();
    report["sidecar"] = (dir / "delta_markers.json").string();
  } else if (!o.out.empty()) {
    write_file(prepare_out_dir(o.out) / "transport.json", report.dump(2) + "\n");
  }
  out << report.dump(2) << "\n";
  return kOk;
}

inline int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
  const Problem p = load_problem(o.problem);
  const json block = p.raw.value("sweep", json::object());

  std::vector<double> eps = o.eps;
  if (eps.empty() && block.contains("eps")) eps = block.at("eps").get<std::vector<double>>();
  if (eps.empty()) eps = {1e-2, 1e-4, 1e-6, 1e-8, 1e-10};
  std::string path_text = o.path;
  if (path_text.empty() && block.contains("path")) path_text = block.at("path").get<std::string>();
  const LimitPath path = parse_path(path_text);

  SweepOptions so;
  so.mu = p.params ? p.params->mu() : 1.0;
  if (block.contains("mu")) so.mu = number_at(block, "mu", "sweep");
  if (!(so.mu > 0.0)) throw ValidationError("sweep: mu must be positive");
  so.solve = solve_options(o, p);
  so.threads = thread_budget();

  const auto dir = prepare_out_dir(o.out.empty() ? "." : o.out);
  json diag{{"path", path.name()}, {"path_law", path.describe()}, {"mu", so.mu}};

  if (p.left.u == p.right.u) {
    diag["case"] = "out-of-case";
    diag["warning"] = "u_left == u_right: neither a delta shock nor a vacuum forms";
    write_file(dir / "sweep_diagnostics.json", diag.dump(2) + "\n");
    err << json{{"warning", diag["warning"]}}.dump() << "\n";
    out << diag.dump(2) << "\n";
    return kOk;
  }

  const SweepReport rep = sweep(p.left, p.right, path, eps, so);
  std::ostringstream csv;
  csv << "eps,k1,k2,rho_star,u_star,sigma1,sigma2,k2_rho_star,mass_rate,lambda1_star,lambda2_star,region\n";
  for (const SweepRow& r : rep.rows) {
    csv << fmt17(r.eps) << ',' << fmt17(r.k1) << ',' << fmt17(r.k2) << ',' << fmt17(r.rho_star) << ','
        << fmt17(r.u_star) << ',' << fmt17(r.sigma1) << ',' << fmt17(r.sigma2) << ',' << fmt17(r.k2_rho_star)
        << ',' << fmt17(r.mass_rate) << ',' << fmt17(r.lambda1_star) << ',' << fmt17(r.lambda2_star) << ','
        << to_string(r.region) << '\n';
  }
  write_file(dir / "sweep.csv", csv.str());

  if (p.left.u > p.right.u) {
    const DeltaLimitDiagnostics d = check_delta_limit(rep);
    diag["case"] = "delta";
    diag["targets"] = {{"k2_rho_star", d.targets.k2_rho_star},
                       {"sigma", d.targets.sigma},
                       {"mass_rate", d.targets.mass_rate}};
    diag["final_gaps"] = {{"k2_rho_star", d.final_k2_rho_star_gap}, {"sigma1", d.final_sigma1_gap},
                          {"sigma2", d.final_sigma2_gap},           {"u_star", d.final_u_star_gap},
                          {"mass_rate", d.final_mass_rate_gap}};
    diag["gaps"] = {{"k2_rho_star", d.k2_rho_star_gap}, {"sigma1", d.sigma1_gap}, {"sigma2", d.sigma2_gap},
                    {"u_star", d.u_star_gap},           {"mass_rate", d.mass_rate_gap}};
    diag["monotone"] = {{"k2_rho_star", d.k2_rho_star_monotone}, {"sigma1", d.sigma1_monotone},
                        {"sigma2", d.sigma2_monotone},           {"u_star", d.u_star_monotone},
                        {"mass_rate", d.mass_rate_monotone},     {"concentration", d.concentration_monotone}};
  } else {
    const VacuumLimitDiagnostics d = check_vacuum_limit(rep);
    diag["case"] = "vacuum";
    diag["final_rho_star"] = d.final_rho_star;
    diag["head1_gap"] = d.head1_gap;
    diag["head2_gap"] = d.head2_gap;
    diag["max_velocity_gap"] = d.max_velocity_gap;
    diag["rho_star"] = d.rho_star;
    diag["rho_star_monotone"] = d.rho_star_monotone;
  }
  diag["rows"] = json::array();
  for (const SweepRow& r : rep.rows) diag["rows"].push_back(to_json(r));
  write_file(dir / "sweep_diagnostics.json", diag.dump(2) + "\n");
  out << diag.dump(2) << "\n";
  return kOk;
}

inline int cmd_fv(const Options& o, std::ostream& out) {
  const Problem p = load_problem(o.problem);
  const Params& params = require_params(p);
  const json block = p.raw.value("grid", json::object());

  double x_min = -1.0;
  double x_max = 1.0;
  if (block.contains("x_min")) x_min = number_at(block, "x_min", "grid");
  if (block.contains("x_max")) x_max = number_at(block, "x_max", "grid");
  std::vector<int> ns = o.grid;
  if (ns.empty() && block.contains("n")) {
    const json& n = block.at("n");
    ns = n.is_array() ? n.get<std::vector<int>>() : std::vector<int>{n.get<int>()};
  }
  if (ns.empty()) ns = {200, 400, 800};
  const double cfl = o.cfl ? *o.cfl : block.value("cfl", 0.5);
  const double t_end = o.t_end ? *o.t_end : block.value("t_end", 0.2);
  if (!(cfl > 0.0 && cfl <= 0.9)) throw ValidationError("--cfl must lie in (0, 0.9]");
  if (!(t_end > 0.0)) throw ValidationError("--t-end must be positive");

  const SolveOptions so = solve_options(o, p);
  const WaveFan fan = solve(p.left, p.right, params, so);
  const auto dir = prepare_out_dir(o.out.empty() ? "." : o.out);

  json runs = json::array();
  std::vector<double> l1;
  for (int n : ns) {
    const Grid grid(x_min, x_max, n);
    const DiscreteField f = evolve(p.left, p.right, params, grid, cfl, t_end);
    std::ostringstream csv;
    csv << "x,rho,momentum,u\n";
    for (int i = 0; i < n; ++i) {
      write_csv_row(csv, {grid.center(i), f.rho[i], f.momentum[i], f.momentum[i] / f.rho[i]});
    }
    const std::string name = "fv_n" + std::to_string(n) + ".csv";
    write_file(dir / name, csv.str());
    l1.push_back(l1_distance(f, fan, t_end, so.quadrature));
    runs.push_back({{"n", n},
                    {"dx", grid.dx()},
                    {"steps", f.steps},
                    {"l1_distance", l1.back()},
                    {"total_mass", f.total_mass()},
                    {"total_momentum", f.total_momentum()},
                    {"max_density", *std::max_element(f.rho.begin(), f.rho.end())},
                    {"profile", (dir / name).string()}});
  }
  json report{{"t_end", t_end}, {"cfl", cfl}, {"x_min", x_min}, {"x_max", x_max},
              {"region", to_string(fan.region)}, {"runs", runs}};
  if (ns.size() > 1) {
    bool decreasing = true;
    json orders = json::array();
    for (std::size_t i = 1; i < ns.size(); ++i) {
      if (!(l1[i] < l1[i - 1])) decreasing = false;
      const double ratio = static_cast<double>(ns[i]) / ns[i - 1];
      orders.push_back(l1[i] > 0.0 && l1[i - 1] > 0.0 ? std::log(l1[i - 1] / l1[i]) / std::log(ratio) : 0.0);
    }
    report["l1_strictly_decreasing"] = decreasing;
    report["observed_order"] = orders;
  }
  write_file(dir / "fv_report.json", report.dump(2) + "\n");
  out << report.dump(2) << "\n";
  return kOk;
}

// ---------------------------------------------------------------- driver

inline int fail(std::ostream& err, int code, const char* kind, const std::string& message) {
  err << json{{"error", {{"code", code}, {"kind", kind}, {"message", message}}}}.dump() << "\n";
  return code;
}

/// Maps the exception in flight to an exit code and writes the error record.
inline int report_current_exception(std::ostream& err) {
  try {
    throw;
  } catch (const PositivityError& e) {
    return fail(err, kPositivity, "positivity", e.what());
  } catch (const ValidationError& e) {
    return fail(err, kValidation, "validation", e.what());
  } catch (const DomainError& e) {
    return fail(err, kValidation, "validation", e.what());
  } catch (const PreconditionError& e) {
    return fail(err, kValidation, "validation", e.what());
  } catch (const json::exception& e) {
    return fail(err, kValidation, "validation", e.what());
  } catch (const Error& e) {
    return fail(err, kSolver, "solver", e.what());
  } catch (const std::exception& e) {
    return fail(err, kSolver, "solver", e.what());
  }
}

/// args excludes the program name.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Riemann solver for isentropic Chaplygin magnetogasdynamics", "cmgd"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub, bool needs_problem) {
    auto* opt = sub->add_option("--problem", o.problem, "Problem JSON file");
    if (needs_problem) opt->required()->check(CLI::ExistingFile);
    sub->add_option("--out", o.out, "Output directory");
    sub->add_option("--tol", o.tol, "Root-finding tolerance");
  };
  auto* solve_cmd = app.add_subcommand("solve", "Wave structure of a Riemann problem (JSON)");
  add_common(solve_cmd, true);
  auto* sample_cmd = app.add_subcommand("sample", "Self-similar profile as CSV (xi, rho, u, p, B)");
  add_common(sample_cmd, false);
  sample_cmd->add_option("--fan", o.fan, "Solve report to sample instead of a problem")->check(CLI::ExistingFile);
  sample_cmd->add_option("--xi-range", o.xi_range, "a,b,n");
  auto* sweep_cmd = app.add_subcommand("sweep", "Vanishing pressure and field sweep");
  add_common(sweep_cmd, true);
  sweep_cmd->add_option("--eps", o.eps, "Comma-separated, strictly decreasing eps list")->delimiter(',');
  sweep_cmd->add_option("--path", o.path, "Preset (default, k1-fast, k2-fast) or 'c*eps^p,c*eps^p'");
  auto* fv_cmd = app.add_subcommand("fv", "Finite-volume oracle against the exact fan");
  add_common(fv_cmd, true);
  fv_cmd->add_option("--grid", o.grid, "Cell counts, comma-separated")->delimiter(',');
  fv_cmd->add_option("--cfl", o.cfl, "Courant number in (0, 0.9]");
  fv_cmd->add_option("--t-end", o.t_end, "Final time");
  auto* transport_cmd = app.add_subcommand("transport", "Pressureless transport solution");
  add_common(transport_cmd, true);
  transport_cmd->add_option("--xi-range", o.xi_range, "a,b,n");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    return fail(err, kValidation, "validation", e.what());
  }

  try {
    if (*solve_cmd) return cmd_solve(o, out);
    if (*sample_cmd) return cmd_sample(o, out);
    if (*sweep_cmd) return cmd_sweep(o, out, err);
    if (*fv_cmd) return cmd_fv(o, out);
    return cmd_transport(o, out);
  } catch (...) {
    return report_current_exception(err);
  }
}

}  // namespace cmgd::cli
