#pragma once

// Thick / syndetic / piecewise syndetic predicates. Windowed answers are
// three-valued; periodic answers are exact.

#include <optional>
#include <string>
#include <vector>

#include "prodset/cover_search.hpp"
#include "prodset/periodic.hpp"
#include "prodset/window_set.hpp"

namespace prodset {

enum class Outcome {
  Witnessed,     // a finite witness was found and verified
  Refuted,       // the property fails, exactly
  Undetermined   // nothing found within the searched range or budget
};

const char* to_string(Outcome o);

struct ThickReport {
  Outcome outcome = Outcome::Undetermined;
  std::optional<GroupElement> witness;  // g with probe * g inside T
  bool bounded_search = false;
};

ThickReport is_right_thick(const FiniteWindowSet& t, const Window& probe, const Window& search);
ThickReport is_right_thick(const PeriodicIntSet& t);

struct IndexReport {
  Outcome outcome = Outcome::Undetermined;
  /// Size of the best verified cover found (an upper bound on the index).
  std::optional<std::size_t> index;
  std::vector<GroupElement> cover;
  /// Certified lower bound on the index (relative to the candidate pool).
  std::size_t lower_bound = 0;
  /// Coverage was computed from fully known membership, so the minimum is
  /// exact relative to the pool.
  bool exact_in_pool = false;
  CoverStatus search_status = CoverStatus::Undetermined;

  /// The reported index is certified minimal.
  bool minimal() const { return index && *index == lower_bound; }
};

struct IndexOptions {
  std::size_t max_k = 16;
  std::size_t node_budget = 2'000'000;
};

/// Least |F| with F ⊂ pool and F * C ⊇ target.
IndexReport syndeticity_index(const FiniteWindowSet& c, const Window& target, const Window& pool,
                              const IndexOptions& opts = {});
/// Exact index over Z via a residue cover of Z_m.
IndexReport syndeticity_index(const PeriodicIntSet& c, const IndexOptions& opts = {});

struct PWReport {
  Outcome outcome = Outcome::Undetermined;
  std::vector<GroupElement> f;
  std::optional<GroupElement> witness;
  bool bounded_search = false;
  std::size_t subsets_tried = 0;
};

struct PWOptions {
  std::size_t max_f_size = 2;
  std::size_t subset_budget = 200'000;
};

/// Looks for F ⊂ pool (by increasing size) such that F * C contains
/// probe * g for some g in search.
PWReport is_piecewise_syndetic(const FiniteWindowSet& c, const Window& f_pool, const Window& probe,
                               const Window& search, const PWOptions& opts = {});
PWReport is_piecewise_syndetic(const PeriodicIntSet& c);

}  // namespace prodset
