#pragma once

#include <string>
#include <vector>

namespace fstefan
{

struct SelftestCheck
{
  std::string name;
  double value = 0.0;      // measured error or quantity
  double tolerance = 0.0;  // pass when value <= tolerance
  bool passed = false;
};

/// Fixed, deterministic invariant suite (a few seconds on one core).
std::vector<SelftestCheck> run_selftest();

}  // namespace fstefan
