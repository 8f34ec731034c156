#pragma once

#include <optional>
#include <string>

namespace bent::cli {

/// Runs the harmonic-analysis invariant suite over the built-in catalogue
/// (or one group when `only` is set), printing one line per check and group.
/// A negative tau selects the per-group default. Returns the number of
/// failed checks.
int run_selftest(double tau, const std::optional<std::string>& only_group_spec);

}  // namespace bent::cli
