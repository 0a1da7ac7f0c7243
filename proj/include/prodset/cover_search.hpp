#pragma once

// Exact minimum set cover over a small universe: greedy incumbent, then
// depth-first branch-and-bound with coverage-count pruning and dominance.

#include <cstddef>
#include <optional>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace prodset {

using Bitset = boost::dynamic_bitset<>;

struct CoverProblem {
  std::size_t universe = 0;
  /// candidates[i] is the subset of the universe covered by candidate i.
  std::vector<Bitset> candidates;
};

struct CoverOptions {
  /// Covers larger than this are not searched for.
  std::size_t max_size = 64;
  std::size_t node_budget = 2'000'000;
  /// Candidates that every reported cover must contain (used to fix a
  /// translate in group-invariant instances).
  std::vector<std::size_t> forced;
};

enum class CoverStatus {
  Optimal,      // picks is a minimum cover
  ExceedsMax,   // every cover has more than max_size candidates (certified)
  Infeasible,   // the candidates' union misses part of the universe
  Undetermined  // budget exhausted; lower_bound and incumbent are still valid
};

struct CoverResult {
  CoverStatus status = CoverStatus::Undetermined;
  std::vector<std::size_t> picks;  // sorted candidate indices; empty if none
  std::size_t lower_bound = 0;
  std::size_t nodes = 0;
};

/// Picks the candidate covering most uncovered elements, lowest index on
/// ties. Infeasible when the union does not cover.
CoverResult greedy_cover(const CoverProblem& problem, const std::vector<std::size_t>& forced = {});

CoverResult minimum_cover(const CoverProblem& problem, const CoverOptions& options = {});

const char* to_string(CoverStatus s);

}  // namespace prodset
