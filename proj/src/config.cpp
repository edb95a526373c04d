#include "fstefan/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "fstefan/error.hpp"

namespace fstefan
{

namespace
{

constexpr std::array<const char*, 20> kKeys = {
    "model", "gamma",  "tau",      "rho",          "c",            "k",    "l",
    "u0",    "x_max",  "nx",       "t_max",        "nt",           "output", "residuals",
    "energy_check", "exponent_fit", "lambda_convention", "scheme", "profiles", "tol"};

constexpr std::array<const char*, 12> kRequired = {"model", "gamma", "tau", "rho", "c", "k", "l",
                                                   "u0",    "x_max", "nx",  "t_max", "nt"};

std::string trim(std::string_view s)
{
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::size_t edit_distance(const std::string& a, const std::string& b)
{
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] != b[j - 1] ? 1u : 0u)});
      diag = up;
    }
  }
  return row[b.size()];
}

struct Entry
{
  std::string value;
  int line = 0;
};

[[noreturn]] void fail(const std::string& key, int line, const std::string& what)
{
  std::ostringstream os;
  if (line > 0) os << "line " << line << ": ";
  os << "key '" << key << "': " << what;
  throw ConfigError(os.str());
}

double as_double(const std::string& key, const Entry& e)
{
  double v = 0.0;
  const char* first = e.value.data();
  const char* last = first + e.value.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v))
    fail(key, e.line, "cannot parse '" + e.value + "' as a finite number");
  return v;
}

int as_int(const std::string& key, const Entry& e)
{
  int v = 0;
  const char* first = e.value.data();
  const char* last = first + e.value.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) fail(key, e.line, "cannot parse '" + e.value + "' as an integer");
  return v;
}

bool as_bool(const std::string& key, const Entry& e)
{
  std::string v = e.value;
  std::transform(v.begin(), v.end(), v.begin(), [](unsigned char ch) { return std::tolower(ch); });
  if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
  if (v == "false" || v == "no" || v == "off" || v == "0") return false;
  fail(key, e.line, "expected true or false, got '" + e.value + "'");
}

std::string fmt(double v)
{
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char* model_name(ModelKind m)
{
  switch (m) {
    case ModelKind::ClosedFormB: return "closed_form_b";
    case ModelKind::SolverA: return "solver_a";
    case ModelKind::NeumannClassical: return "neumann_classical";
  }
  return "?";
}

// Checks one invariant and reports it against the line the key came from.
void require(bool ok, const char* key, const std::map<std::string, Entry>* entries, const std::string& what)
{
  if (ok) return;
  int line = 0;
  if (entries) {
    const auto it = entries->find(key);
    if (it != entries->end()) line = it->second.line;
  }
  fail(key, line, what);
}

void check(const RunConfig& c, const std::map<std::string, Entry>* entries)
{
  require(c.frac.gamma > 0.0 && c.frac.gamma <= 1.0, "gamma", entries,
          "value " + fmt(c.frac.gamma) + " outside the admissible range (0, 1]");
  require(c.model != ModelKind::NeumannClassical || c.frac.gamma == 1.0, "gamma", entries,
          "model neumann_classical requires gamma = 1");
  require(c.frac.tau > 0.0, "tau", entries, "must be positive");
  require(c.material.rho > 0.0, "rho", entries, "must be positive");
  require(c.material.c > 0.0, "c", entries, "must be positive");
  require(c.material.k > 0.0, "k", entries, "must be positive");
  require(c.material.l > 0.0, "l", entries, "must be positive");
  require(c.boundary.u0 > 0.0, "u0", entries, "must be positive");
  require(c.grid.x_max > 0.0, "x_max", entries, "must be positive");
  require(c.grid.t_max > 0.0, "t_max", entries, "must be positive");
  require(c.grid.nx >= 8, "nx", entries, "must be at least 8");
  require(c.grid.nt >= 8, "nt", entries, "must be at least 8");
  require(c.profiles >= 1 && c.profiles <= 1000, "profiles", entries, "must lie in [1, 1000]");
  require(c.tol > 0.0 && c.tol < 1e-3, "tol", entries, "must lie in (0, 1e-3)");
}

}  // namespace

std::string suggest_key(const std::string& unknown)
{
  std::string best;
  std::size_t best_d = 3;
  for (const char* k : kKeys) {
    const std::size_t d = edit_distance(unknown, k);
    if (d < best_d) {
      best_d = d;
      best = k;
    }
  }
  return best;
}

RunConfig parse_config(const std::string& text)
{
  std::map<std::string, Entry> entries;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(std::string_view(raw).substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      std::ostringstream os;
      os << "line " << line_no << ": expected 'key = value', got '" << line << "'";
      throw ConfigError(os.str());
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (std::find_if(kKeys.begin(), kKeys.end(), [&](const char* k) { return key == k; }) == kKeys.end()) {
      const std::string hint = suggest_key(key);
      fail(key, line_no, hint.empty() ? "unknown key" : "unknown key (did you mean '" + hint + "'?)");
    }
    if (value.empty()) fail(key, line_no, "missing value");
    if (entries.count(key)) fail(key, line_no, "duplicate key (first set on line " + std::to_string(entries[key].line) + ")");
    entries[key] = {value, line_no};
  }
  for (const char* k : kRequired)
    if (!entries.count(k)) fail(k, 0, "required key is missing");

  RunConfig c;
  const auto& model = entries["model"];
  if (model.value == "closed_form_b") c.model = ModelKind::ClosedFormB;
  else if (model.value == "solver_a") c.model = ModelKind::SolverA;
  else if (model.value == "neumann_classical") c.model = ModelKind::NeumannClassical;
  else fail("model", model.line, "expected closed_form_b, solver_a or neumann_classical, got '" + model.value + "'");

  c.frac.gamma = as_double("gamma", entries["gamma"]);
  c.frac.tau = as_double("tau", entries["tau"]);
  c.material.rho = as_double("rho", entries["rho"]);
  c.material.c = as_double("c", entries["c"]);
  c.material.k = as_double("k", entries["k"]);
  c.material.l = as_double("l", entries["l"]);
  c.boundary.u0 = as_double("u0", entries["u0"]);
  c.grid.x_max = as_double("x_max", entries["x_max"]);
  c.grid.nx = as_int("nx", entries["nx"]);
  c.grid.t_max = as_double("t_max", entries["t_max"]);
  c.grid.nt = as_int("nt", entries["nt"]);

  if (auto it = entries.find("output"); it != entries.end()) c.output = it->second.value;
  if (auto it = entries.find("residuals"); it != entries.end()) c.residuals = as_bool("residuals", it->second);
  if (auto it = entries.find("energy_check"); it != entries.end()) c.energy_check = as_bool("energy_check", it->second);
  if (auto it = entries.find("exponent_fit"); it != entries.end()) c.exponent_fit = as_bool("exponent_fit", it->second);
  if (auto it = entries.find("profiles"); it != entries.end()) c.profiles = as_int("profiles", it->second);
  if (auto it = entries.find("tol"); it != entries.end()) c.tol = as_double("tol", it->second);
  if (auto it = entries.find("lambda_convention"); it != entries.end()) {
    const auto& v = it->second.value;
    if (v == "dimensional") c.lambda_convention = LambdaConvention::Dimensional;
    else if (v == "paper" || v == "paper_printed") c.lambda_convention = LambdaConvention::AlphaPower;
    else fail("lambda_convention", it->second.line, "expected dimensional or paper, got '" + v + "'");
  }
  if (auto it = entries.find("scheme"); it != entries.end()) {
    const auto& v = it->second.value;
    if (v == "front_tracking") c.scheme = Scheme::FrontTracking;
    else if (v == "enthalpy") c.scheme = Scheme::ExplicitEnthalpy;
    else fail("scheme", it->second.line, "expected front_tracking or enthalpy, got '" + v + "'");
  }

  check(c, &entries);
  return c;
}

RunConfig load_config(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void validate(const RunConfig& cfg) { check(cfg, nullptr); }

std::vector<std::string> describe(const RunConfig& c)
{
  auto b = [](bool v) { return std::string(v ? "true" : "false"); };
  return {
      "model = " + std::string(model_name(c.model)),
      "gamma = " + fmt(c.frac.gamma),
      "tau = " + fmt(c.frac.tau),
      "rho = " + fmt(c.material.rho),
      "c = " + fmt(c.material.c),
      "k = " + fmt(c.material.k),
      "l = " + fmt(c.material.l),
      "u0 = " + fmt(c.boundary.u0),
      "x_max = " + fmt(c.grid.x_max),
      "nx = " + std::to_string(c.grid.nx),
      "t_max = " + fmt(c.grid.t_max),
      "nt = " + std::to_string(c.grid.nt),
      "output = " + c.output,
      "residuals = " + b(c.residuals),
      "energy_check = " + b(c.energy_check),
      "exponent_fit = " + b(c.exponent_fit),
      std::string("lambda_convention = ") +
          (c.lambda_convention == LambdaConvention::Dimensional ? "dimensional" : "paper"),
      std::string("scheme = ") + (c.scheme == Scheme::FrontTracking ? "front_tracking" : "enthalpy"),
      "profiles = " + std::to_string(c.profiles),
      "tol = " + fmt(c.tol),
  };
}

}  // namespace fstefan
