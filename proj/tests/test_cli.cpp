#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fstefan/cli.hpp"
#include "fstefan/config.hpp"
#include "fstefan/csv.hpp"
#include "fstefan/error.hpp"

using namespace fstefan;
namespace fs = std::filesystem;

namespace
{

const char* kBase =
    "# unit material\n"
    "model = closed_form_b\n"
    "gamma = 0.6   # order\n"
    "tau = 1\n"
    "rho = 1\n"
    "c = 1\n"
    "k = 1\n"
    "l = 1\n"
    "u0 = 1\n"
    "x_max = 2\n"
    "nx = 40\n"
    "t_max = 1\n"
    "nt = 80\n";

std::string message_of(const std::string& text)
{
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

std::string replace(std::string text, const std::string& from, const std::string& to)
{
  text.replace(text.find(from), from.size(), to);
  return text;
}

std::string slurp(const fs::path& p)
{
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Sandbox
{
  fs::path dir;
  explicit Sandbox(const std::string& name) : dir(fs::temp_directory_path() / ("fstefan_test_" + name))
  {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Sandbox() { fs::remove_all(dir); }
  std::string write(const std::string& name, const std::string& text) const
  {
    std::ofstream(dir / name, std::ios::binary) << text;
    return (dir / name).string();
  }
};

}  // namespace

TEST_CASE("parse a complete configuration")
{
  const RunConfig c = parse_config(kBase);
  CHECK(c.model == ModelKind::ClosedFormB);
  CHECK(c.frac.gamma == 0.6);
  CHECK(c.grid.nx == 40);
  CHECK(c.profiles == 4);
  CHECK(c.scheme == Scheme::FrontTracking);
  CHECK(c.lambda_convention == LambdaConvention::Dimensional);

  const RunConfig d = parse_config(std::string(kBase) +
                                   "residuals = yes\nscheme = enthalpy\nlambda_convention = paper\nprofiles = 2\n");
  CHECK(d.residuals);
  CHECK(d.scheme == Scheme::ExplicitEnthalpy);
  CHECK(d.lambda_convention == LambdaConvention::AlphaPower);
  CHECK(d.profiles == 2);
}

TEST_CASE("configuration errors name the key and line")
{
  const std::string range = message_of(replace(kBase, "gamma = 0.6", "gamma = 1.5"));
  CHECK(range.find("gamma") != std::string::npos);
  CHECK(range.find("(0, 1]") != std::string::npos);
  CHECK(range.find("line 3") != std::string::npos);

  const std::string typo = message_of(replace(kBase, "gamma", "gama"));
  CHECK(typo.find("did you mean 'gamma'") != std::string::npos);

  CHECK(message_of(replace(kBase, "nx = 40\n", "")).find("'nx'") != std::string::npos);
  CHECK(message_of(replace(kBase, "rho = 1", "rho = one")).find("rho") != std::string::npos);
  CHECK(message_of(replace(kBase, "c = 1", "c = -1")).find("'c'") != std::string::npos);
  CHECK(message_of(std::string(kBase) + "tau = 2\n").find("duplicate") != std::string::npos);
  CHECK(message_of(std::string(kBase) + "just words\n").find("line 14") != std::string::npos);
  CHECK(message_of(replace(kBase, "closed_form_b", "model_d")).find("model") != std::string::npos);
  CHECK(message_of(replace(kBase, "closed_form_b", "neumann_classical")).find("gamma = 1") != std::string::npos);
  CHECK(suggest_key("zzzzzzzz").empty());
}

TEST_CASE("described configuration parses back to itself")
{
  RunConfig c = parse_config(std::string(kBase) + "tol = 1e-11\nexponent_fit = true\noutput = somewhere\n");
  std::string text;
  for (const auto& line : describe(c)) text += line + "\n";
  CHECK(describe(parse_config(text)) == describe(c));
}

TEST_CASE("real formatting is fixed at 17 significant digits")
{
  CHECK(format_real(0.1) == "0.10000000000000001");
  CHECK(format_real(1.0) == "1");
  CHECK(format_real(1.5e-7) == "1.4999999999999999e-07");
}

TEST_CASE("closed-form command writes the front and profiles with metadata")
{
  Sandbox box("closed_form");
  const std::string cfg = box.write("c.txt", kBase);
  const std::string out = (box.dir / "out").string();
  REQUIRE(run_command({"closed-form", "--config", cfg, "--out", out}) == kExitOk);
  for (const char* f : {"front.csv", "profile_t1.csv", "profile_t4.csv"}) CHECK(fs::exists(fs::path(out) / f));
  const std::string front = slurp(fs::path(out) / "front.csv");
  CHECK(front.rfind("# fstefan closed-form\n# model = closed_form_b\n", 0) == 0);
  CHECK(front.find("\nt,s\n0,0\n") != std::string::npos);
  CHECK(front.find('\r') == std::string::npos);
}

TEST_CASE("exit codes")
{
  Sandbox box("exit_codes");
  const std::string out = (box.dir / "out").string();
  CHECK(run_command({}) == kExitConfig);
  CHECK(run_command({"closed-form"}) == kExitConfig);
  CHECK(run_command({"closed-form", "--config", (box.dir / "missing.txt").string()}) == kExitConfig);
  const std::string bad = box.write("bad.txt", replace(kBase, "gamma = 0.6", "gamma = 0"));
  CHECK(run_command({"simulate", "--config", bad, "--out", out}) == kExitConfig);
  const std::string ok = box.write("ok.txt", kBase);
  CHECK(run_command({"simulate", "--config", ok, "--out", out, "--gamma", "2"}) == kExitConfig);
  CHECK(run_command({"simulate", "--config", ok, "--out", out, "--lambda-convention", "other"}) == kExitConfig);
  const std::string small = box.write("small.txt", replace(kBase, "x_max = 2", "x_max = 0.2"));
  CHECK(run_command({"simulate", "--config", small, "--out", out}) == kExitNumerical);
  const std::string unstable = box.write("unstable.txt", std::string(kBase) + "scheme = enthalpy\n");
  CHECK(run_command({"simulate", "--config", unstable, "--out", out}) == kExitNumerical);
}

TEST_CASE("simulate with all analyses enabled")
{
  Sandbox box("simulate");
  const std::string cfg = box.write(
      "s.txt", replace(kBase, "closed_form_b", "solver_a") + "residuals = true\nenergy_check = true\nexponent_fit = true\n");
  const std::string out = (box.dir / "out").string();
  REQUIRE(run_command({"simulate", "--config", cfg, "--out", out, "--ste", "0.5"}) == kExitOk);
  for (const char* f : {"front.csv", "residual.csv", "energy.csv", "exponent.txt", "profile_t2.csv"})
    CHECK(fs::exists(fs::path(out) / f));
  const std::string energy = slurp(fs::path(out) / "energy.csv");
  CHECK(energy.find("# l = 2\n") != std::string::npos);
  CHECK(energy.find("t,lhs,rhs,rel_mismatch\n") != std::string::npos);
}

TEST_CASE("compare and residual commands")
{
  Sandbox box("compare");
  const std::string cfg = box.write("c.txt", kBase);
  const std::string out = (box.dir / "out").string();
  REQUIRE(run_command({"compare", "--config", cfg, "--out", out}) == kExitOk);
  const std::string cmp = slurp(fs::path(out) / "compare_front.csv");
  CHECK(cmp.find("t,s_A,s_B,rel_diff\n") != std::string::npos);
  REQUIRE(run_command({"residual", "--config", cfg, "--out", out}) == kExitOk);
  CHECK(slurp(fs::path(out) / "residual.csv").find("x,t,value\n") != std::string::npos);
  REQUIRE(run_command({"exponent", "--config", cfg, "--out", out}) == kExitOk);
  const std::string fit = slurp(fs::path(out) / "exponent.txt");
  const auto at = fit.find("\np,A,r2\n");
  REQUIRE(at != std::string::npos);
  CHECK(std::stod(fit.substr(at + 8)) == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("config output key is used unless --out is given")
{
  Sandbox box("output_key");
  const std::string target = (box.dir / "from_config").string();
  const std::string cfg = box.write("c.txt", std::string(kBase) + "output = " + target + "\n");
  REQUIRE(run_command({"exponent", "--config", cfg}) == kExitOk);
  CHECK(fs::exists(fs::path(target) / "exponent.txt"));
}
