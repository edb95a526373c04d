#include "fstefan/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>

#include "fstefan/analysis.hpp"
#include "fstefan/config.hpp"
#include "fstefan/csv.hpp"
#include "fstefan/error.hpp"
#include "fstefan/selftest.hpp"

namespace fs = std::filesystem;

namespace fstefan
{

namespace
{

struct Overrides
{
  std::string config;
  std::string out = "./out";
  std::optional<double> gamma;
  std::optional<double> ste;
  std::optional<std::string> lambda;
  CLI::Option* out_opt = nullptr;
};

void add_common(CLI::App* sub, Overrides& o, bool config_required)
{
  auto* c = sub->add_option("--config", o.config, "configuration file (key = value lines)");
  if (config_required) c->required();
  o.out_opt = sub->add_option("--out", o.out, "output directory (default ./out)");
  sub->add_option("--gamma", o.gamma, "override the fractional order");
  sub->add_option("--ste", o.ste, "override the Stefan number by setting l = c u0 / ste");
  sub->add_option("--lambda-convention", o.lambda, "dimensional or paper");
}

struct Context
{
  RunConfig cfg;
  fs::path out;
  std::vector<std::string> meta;

  std::string file(const std::string& name) const { return (out / name).string(); }
};

Context resolve(const std::string& command, const Overrides& o)
{
  Context ctx;
  ctx.cfg = load_config(o.config);
  RunConfig& c = ctx.cfg;
  if (o.gamma) c.frac.gamma = *o.gamma;
  if (o.ste) {
    if (!(*o.ste > 0.0)) throw ConfigError("--ste: must be positive");
    c.material.l = c.material.c * c.boundary.u0 / *o.ste;
  }
  if (o.lambda) {
    if (*o.lambda == "dimensional") c.lambda_convention = LambdaConvention::Dimensional;
    else if (*o.lambda == "paper") c.lambda_convention = LambdaConvention::AlphaPower;
    else throw ConfigError("--lambda-convention: expected dimensional or paper, got '" + *o.lambda + "'");
  }
  validate(c);

  const bool out_given = o.out_opt && o.out_opt->count() > 0;
  ctx.out = (!out_given && !c.output.empty()) ? fs::path(c.output) : fs::path(o.out);
  std::error_code ec;
  fs::create_directories(ctx.out, ec);
  if (ec || !fs::is_directory(ctx.out))
    throw ConfigError("output directory '" + ctx.out.string() + "' cannot be created");

  ctx.meta.push_back("fstefan " + command);
  for (const auto& line : describe(c)) ctx.meta.push_back(line);
  ctx.meta.push_back("stefan_number = " + format_real(stefan_number(c.material, c.boundary)));
  return ctx;
}

SimilaritySolution closed_form(const RunConfig& c)
{
  if (c.model == ModelKind::NeumannClassical) return neumann_classical(c.material, c.boundary, c.tol);
  return similarity_solution(c.material, c.frac, c.boundary, c.tol, c.lambda_convention);
}

FracParams effective_frac(const RunConfig& c)
{
  FracParams f = c.frac;
  if (c.model == ModelKind::NeumannClassical) f.gamma = 1.0;
  return f;
}

FrontPath sampled_front(const SimilaritySolution& sol, const Grid1D& g)
{
  FrontPath p{Eigen::VectorXd(g.nt + 1), Eigen::VectorXd(g.nt + 1)};
  for (int n = 0; n <= g.nt; ++n) {
    p.times[n] = g.t(n);
    p.positions[n] = n == 0 ? 0.0 : similarity_s(sol, g.t(n));
  }
  return p;
}

void write_front(const Context& ctx, const FrontPath& front)
{
  CsvWriter w(ctx.file("front.csv"), ctx.meta, {"t", "s"});
  for (Eigen::Index n = 0; n < front.times.size(); ++n) w.row({front.times[n], front.positions[n]});
}

int profile_level(const Grid1D& g, int k, int profiles)
{
  return static_cast<int>(std::lround(static_cast<double>(k) * g.nt / profiles));
}

void write_profiles(const Context& ctx, const SimilaritySolution& sol)
{
  const Grid1D& g = ctx.cfg.grid;
  for (int k = 1; k <= ctx.cfg.profiles; ++k) {
    const double t = g.t(std::max(1, profile_level(g, k, ctx.cfg.profiles)));
    auto meta = ctx.meta;
    meta.push_back("profile_time = " + format_real(t));
    CsvWriter w(ctx.file("profile_t" + std::to_string(k) + ".csv"), meta, {"x", "u"});
    for (int i = 0; i <= g.nx; ++i) w.row({g.x(i), similarity_u(sol, g.x(i), t)});
  }
}

void write_profiles(const Context& ctx, const SimState& st)
{
  const Grid1D& g = ctx.cfg.grid;
  for (int k = 1; k <= ctx.cfg.profiles; ++k) {
    const int n = std::max(1, profile_level(g, k, ctx.cfg.profiles));
    auto meta = ctx.meta;
    meta.push_back("profile_time = " + format_real(g.t(n)));
    CsvWriter w(ctx.file("profile_t" + std::to_string(k) + ".csv"), meta, {"x", "u"});
    for (int i = 0; i <= g.nx; ++i) w.row({g.x(i), st.temperature(n, i)});
  }
}

std::vector<SpaceTimePoint> closed_form_points(const SimilaritySolution& sol, const RunConfig& c)
{
  std::vector<SpaceTimePoint> pts;
  for (int k = 1; k <= c.profiles; ++k) {
    const double t = c.grid.t_max * k / c.profiles;
    for (int i = 1; i <= 9; ++i) pts.push_back({0.1 * i * similarity_s(sol, t), t});
  }
  return pts;
}

std::vector<SpaceTimePoint> solver_points(const SimState& st, const RunConfig& c)
{
  const Grid1D& g = st.grid;
  std::vector<SpaceTimePoint> pts;
  for (int k = 1; k <= c.profiles; ++k) {
    const int n = std::max(1, profile_level(g, k, c.profiles));
    const double s = st.front.positions[n];
    for (int i = 1; i <= 9; ++i) {
      const double x = 0.1 * i * s;
      if (x - g.dx() > 0.0 && x + g.dx() < s) pts.push_back({x, g.t(n)});
    }
  }
  return pts;
}

void write_residual(const Context& ctx, const ResidualReport& r, const std::string& label)
{
  auto meta = ctx.meta;
  meta.push_back("residual = " + label);
  CsvWriter w(ctx.file("residual.csv"), meta, {"x", "t", "value"});
  for (std::size_t i = 0; i < r.points.size(); ++i) w.row({r.points[i].x, r.points[i].t, r.values[i]});
  std::printf("residual (%s): points=%zu max_abs=%s mean=%s positive=%d negative=%d\n", label.c_str(),
              r.points.size(), format_real(r.summary.max_abs).c_str(), format_real(r.summary.mean).c_str(),
              r.summary.positive, r.summary.negative);
}

void write_energy(const Context& ctx, const EnergyBalance& eb)
{
  CsvWriter w(ctx.file("energy.csv"), ctx.meta, {"t", "lhs", "rhs", "rel_mismatch"});
  for (Eigen::Index n = 0; n < eb.times.size(); ++n) w.row({eb.times[n], eb.lhs[n], eb.rhs[n], eb.rel_mismatch[n]});
  std::printf("energy balance: max rel_mismatch beyond level 5 = %s\n", format_real(eb.max_mismatch(5)).c_str());
}

void write_exponent(const Context& ctx, const FrontPath& front)
{
  const double t_hi = ctx.cfg.grid.t_max;
  const PowerFit fit = exponent_fit(front, 0.1 * t_hi, t_hi);
  auto meta = ctx.meta;
  meta.push_back("fit_window = " + format_real(0.1 * t_hi) + " " + format_real(t_hi));
  CsvWriter w(ctx.file("exponent.txt"), meta, {"p", "A", "r2"});
  w.row({fit.p, fit.A, fit.r2});
  std::printf("p=%.4f A=%.6f r2=%.6f\n", fit.p, fit.A, fit.r2);
}

SimState simulate(const RunConfig& c)
{
  return run(c.material, c.frac, c.boundary, c.grid, c.scheme);
}

int cmd_closed_form(const Context& ctx)
{
  const RunConfig& c = ctx.cfg;
  const auto sol = closed_form(c);
  const FrontPath front = sampled_front(sol, c.grid);
  write_front(ctx, front);
  write_profiles(ctx, sol);
  if (c.residuals)
    write_residual(ctx, model_a_residual(sol, c.material, effective_frac(c), closed_form_points(sol, c)),
                   "model_a_of_closed_form");
  if (c.exponent_fit) write_exponent(ctx, front);
  return kExitOk;
}

int cmd_simulate(const Context& ctx)
{
  const RunConfig& c = ctx.cfg;
  const SimState st = simulate(c);
  write_front(ctx, st.front);
  write_profiles(ctx, st);
  if (c.residuals) write_residual(ctx, model_a_residual(st, c.material, c.frac, solver_points(st, c)), "model_a_of_solver");
  if (c.energy_check) write_energy(ctx, energy_balance_check(st, c.material, c.frac));
  if (c.exponent_fit) write_exponent(ctx, st.front);
  return kExitOk;
}

int cmd_residual(const Context& ctx)
{
  const RunConfig& c = ctx.cfg;
  if (c.model == ModelKind::SolverA) {
    const SimState st = simulate(c);
    write_residual(ctx, model_a_residual(st, c.material, c.frac, solver_points(st, c)), "model_a_of_solver");
  } else {
    const auto sol = closed_form(c);
    write_residual(ctx, model_a_residual(sol, c.material, effective_frac(c), closed_form_points(sol, c)),
                   "model_a_of_closed_form");
  }
  return kExitOk;
}

int cmd_energy(const Context& ctx)
{
  const RunConfig& c = ctx.cfg;
  write_energy(ctx, energy_balance_check(simulate(c), c.material, c.frac));
  return kExitOk;
}

int cmd_exponent(const Context& ctx)
{
  const RunConfig& c = ctx.cfg;
  if (c.model == ModelKind::SolverA) write_exponent(ctx, simulate(c).front);
  else write_exponent(ctx, sampled_front(closed_form(c), c.grid));
  return kExitOk;
}

int cmd_compare(const Context& ctx)
{
  const RunConfig& c = ctx.cfg;
  if (c.model == ModelKind::NeumannClassical) throw ConfigError("compare: model must be closed_form_b or solver_a");
  const auto sol = similarity_solution(c.material, c.frac, c.boundary, c.tol, c.lambda_convention);
  const SimState st = simulate(c);
  double worst = 0.0;
  {
    CsvWriter w(ctx.file("compare_front.csv"), ctx.meta, {"t", "s_A", "s_B", "rel_diff"});
    for (int n = 0; n <= c.grid.nt; ++n) {
      const double t = c.grid.t(n);
      const double sa = st.front.positions[n];
      const double sb = n == 0 ? 0.0 : similarity_s(sol, t);
      const double rel = sb > 0.0 ? std::fabs(sa - sb) / sb : std::fabs(sa);
      if (n >= c.grid.nt / 10) worst = std::max(worst, rel);
      w.row({t, sa, sb, rel});
    }
  }
  std::printf("front: max rel_diff over the final 90%% of the horizon = %s\n", format_real(worst).c_str());
  write_residual(ctx, model_a_residual(sol, c.material, c.frac, closed_form_points(sol, c)), "model_a_of_closed_form");
  return kExitOk;
}

int cmd_selftest(const Overrides& o)
{
  std::error_code ec;
  fs::create_directories(o.out, ec);
  if (ec || !fs::is_directory(o.out)) throw ConfigError("output directory '" + o.out + "' cannot be created");
  const auto checks = run_selftest();
  bool ok = true;
  CsvWriter w((fs::path(o.out) / "selftest.csv").string(), {"fstefan selftest"}, {"check", "value", "threshold", "pass"});
  for (const auto& ch : checks) {
    w.row(ch.name, {ch.value, ch.tolerance, ch.passed ? 1.0 : 0.0});
    std::printf("%s %s value=%s threshold=%s\n", ch.passed ? "PASS" : "FAIL", ch.name.c_str(),
                format_real(ch.value).c_str(), format_real(ch.tolerance).c_str());
    ok = ok && ch.passed;
  }
  return ok ? kExitOk : kExitSelftest;
}

}  // namespace

int run_command(const std::vector<std::string>& args)
{
  CLI::App app{"Fractional Stefan problem: closed forms, solver and diagnostics", "fstefan"};
  app.require_subcommand(1);
  Overrides o;

  struct Entry
  {
    const char* name;
    const char* help;
    int (*fn)(const Context&);
  };
  const Entry entries[] = {
      {"closed-form", "closed-form front and profiles", cmd_closed_form},
      {"simulate", "run the fixed-grid solver", cmd_simulate},
      {"residual", "coupled heat-equation residual", cmd_residual},
      {"energy-check", "global energy balance of a solver run", cmd_energy},
      {"exponent", "fit s = A t^p over the final time decade", cmd_exponent},
      {"compare", "solver front against the closed form, plus its residual", cmd_compare},
  };
  std::vector<std::pair<CLI::App*, const Entry*>> subs;
  for (const auto& e : entries) {
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    add_common(sub, o, true);
    subs.emplace_back(sub, &e);
  }
  CLI::App* selftest = app.add_subcommand("selftest", "run the built-in invariant suite");
  add_common(selftest, o, false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (selftest->parsed()) return cmd_selftest(o);
    for (const auto& [sub, e] : subs)
      if (sub->parsed()) return e->fn(resolve(e->name, o));
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "fstefan: config error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "fstefan: numerical failure: %s\n", e.what());
    return kExitNumerical;
  }
  return kExitConfig;
}

}  // namespace fstefan
