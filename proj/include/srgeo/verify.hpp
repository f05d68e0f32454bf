#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace srgeo::verify {

enum class Bound { Upper, Lower };

struct CheckResult
{
  std::string id;
  std::string description;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  Bound bound = Bound::Upper;  // Upper: measured <= threshold; Lower: measured >= threshold
  std::string detail;
  double seconds = 0.0;
};

struct Options
{
  std::uint64_t seed = 42;
  /// Replaces every error bound (Upper checks) when set.
  std::optional<double> tolerance_override;
};

/// The numbered acceptance criteria, one result per criterion (runtime limits folded in).
std::vector<CheckResult> run_acceptance(const Options & opt = {});

/// Module invariants and properties.
std::vector<CheckResult> run_invariants(const Options & opt = {});

bool all_passed(const std::vector<CheckResult> & results);

}  // namespace srgeo::verify
