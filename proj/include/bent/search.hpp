#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "bent/nonlinearity.hpp"

namespace bent {

/// Hard cap on |H|^|G| for exhaustive jobs.
inline constexpr std::uint64_t kMaxExhaustive = 100'000'000;

/// Manual shard k-of-n over the function counter.
struct Partition {
  int index = 0;
  int count = 1;
};

/// |H|^|G|, or kMaxExhaustive+1 if the space is larger than the cap.
std::uint64_t function_space_size(const FiniteGroup& domain, const FiniteGroup& codomain);

/// Streams function tables in lexicographic order of the value array
/// (a base-|H| counter with values[0] the most significant digit). A k-of-n
/// partition yields exactly the counters congruent to k mod n.
class FunctionEnumerator {
 public:
  FunctionEnumerator(const FiniteGroup& domain, const FiniteGroup& codomain, Partition part = {});

  bool done() const { return counter_ >= total_; }
  const FunctionTable& current() const { return table_; }
  std::uint64_t counter() const { return counter_; }
  std::uint64_t total() const { return total_; }
  void advance();

 private:
  void set_from_counter();

  FunctionTable table_;
  std::uint64_t counter_ = 0;
  std::uint64_t total_ = 0;
  std::uint64_t stride_ = 1;
};

inline constexpr const char* kGeneratorName = "splitmix64";

/// Counter-based sample: the value array of sample `index` for `seed`.
/// Reproducible across runs, platforms and worker counts.
std::vector<int> random_function_values(std::uint64_t seed, std::uint64_t index,
                                        int domain_order, int codomain_order);

struct SearchJob {
  enum class Mode { Exhaustive, Random };

  std::string domain_spec;
  std::string codomain_spec;
  Mode mode = Mode::Exhaustive;
  std::uint64_t sample_count = 0;  // random mode
  std::uint64_t seed = 0;          // random mode
  bool run_oracle = true;
  bool run_bent = true;
  bool run_norm = false;
  Partition partition;
  int workers = 1;
  double tau = -1.0;
};

struct Disagreement {
  std::uint64_t counter = 0;
  std::vector<int> values;
  PnVerdict oracle;
  PnVerdict bent;
};

struct SearchReport {
  std::string domain_name;
  std::string codomain_name;
  std::string mode;
  std::string criteria;  // comma-joined: oracle,bent,norm
  bool compared = false;  // both oracle and bent ran
  std::uint64_t examined = 0;
  std::uint64_t pn_found = 0;
  std::uint64_t agreements = 0;
  std::vector<Disagreement> disagreements;  // sorted by counter
  bool norm_applicable = false;
  std::uint64_t norm_only = 0;  // norm condition holds but not PN
  std::uint64_t seed = 0;
  std::string generator;
  double wall_seconds = 0.0;  // never serialized; reports must be byte-stable
};

/// Deterministic for a fixed job: totals are order-independent sums and
/// disagreement dumps are sorted, so any worker count yields the same report.
SearchReport run_search(const SearchJob& job);

void save_report(const SearchReport& r, std::ostream& out);
void save_report(const SearchReport& r, const std::string& path);

}  // namespace bent
