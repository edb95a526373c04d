#pragma once

// Line-oriented `key = value` run configuration.

#include <optional>
#include <string>
#include <vector>

#include "fstefan/closedform.hpp"
#include "fstefan/solver.hpp"

namespace fstefan
{

enum class ModelKind { ClosedFormB, SolverA, NeumannClassical };

struct RunConfig
{
  ModelKind model = ModelKind::ClosedFormB;
  Material material;
  FracParams frac;
  BoundaryData boundary;
  Grid1D grid;
  std::string output;  // empty: use the command-line --out directory
  bool residuals = false;
  bool energy_check = false;
  bool exponent_fit = false;
  LambdaConvention lambda_convention = LambdaConvention::Dimensional;
  Scheme scheme = Scheme::FrontTracking;
  int profiles = 4;
  double tol = 1e-12;
};

/// Parses and validates a configuration. Errors are ConfigError and name the key and line.
RunConfig parse_config(const std::string& text);

/// Reads the file at path and parses it.
RunConfig load_config(const std::string& path);

/// Re-checks every invariant; called after command-line overrides.
void validate(const RunConfig& cfg);

/// Fully resolved configuration as `key = value` lines, in a fixed order.
std::vector<std::string> describe(const RunConfig& cfg);

/// Nearest known key by edit distance, or empty when nothing is reasonably close.
std::string suggest_key(const std::string& unknown);

}  // namespace fstefan
