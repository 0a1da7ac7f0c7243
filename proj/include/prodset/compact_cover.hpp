#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "prodset/cover_search.hpp"
#include "prodset/error.hpp"
#include "prodset/group.hpp"
#include "prodset/rational.hpp"
#include "prodset/rng.hpp"

namespace prodset {

/// A finite cyclic product K with normalized counting measure. Subsets are
/// bitsets indexed by the mixed-radix position of an element, which agrees
/// with the canonical element order.
class FiniteGroupSpace {
 public:
  explicit FiniteGroupSpace(GroupDescriptor desc);
  static FiniteGroupSpace cyclic(int64_t n);

  const GroupDescriptor& descriptor() const { return desc_; }
  std::size_t order() const { return order_; }

  std::size_t index(const GroupElement& g) const;
  GroupElement element(std::size_t i) const;
  std::size_t mul(std::size_t i, std::size_t j) const;
  std::size_t inv(std::size_t i) const;
  std::size_t identity() const { return 0; }

  Bitset empty() const { return Bitset(order_); }
  Bitset full() const;
  Bitset subset(const std::vector<std::size_t>& indices) const;
  Bitset subset_of(const std::vector<GroupElement>& elements) const;
  std::vector<std::size_t> members(const Bitset& s) const;

  Rational measure(const Bitset& s) const;
  /// k * S.
  Bitset translate(std::size_t k, const Bitset& s) const;
  /// S * k.
  Bitset translate_right(const Bitset& s, std::size_t k) const;
  Bitset inverse(const Bitset& s) const;

  /// Bernoulli subset with a random density in [min_measure, 0.5], padded
  /// up to measure >= min_measure.
  Bitset random_subset(double min_measure, Rng& rng) const;

 private:
  GroupDescriptor desc_;
  std::size_t order_;
  std::vector<int64_t> radix_;
};

/// Thrown when U does not contain {k : E ∩ kE ≠ ∅}.
class HypothesisViolation : public Error {
 public:
  HypothesisViolation(const std::string& what, std::size_t k) : Error(what), k_(k) {}
  std::size_t violating_index() const { return k_; }

 private:
  std::size_t k_;
};

struct TranslateResult {
  std::size_t k0 = 0;
  Rational overlap;
};

/// Exhaustive argmax over k of m(C ∩ kD), least k on ties.
TranslateResult best_translate(const FiniteGroupSpace& space, const Bitset& c, const Bitset& d);

/// {k : A ∩ kB ≠ ∅} = A B^{-1}.
Bitset correlation_set(const FiniteGroupSpace& space, const Bitset& a, const Bitset& b);

struct GreedyCover {
  std::vector<std::size_t> picks;  // in pick order, starting with the identity
  Bitset covered;
  /// floor(1 / m(E)).
  int64_t bound = 0;
};

/// Repeatedly picks the least k outside the union of the chosen translates
/// of U. Verifies the lemma hypothesis up front and the pairwise
/// disjointness of the translates k_j E while running.
GreedyCover greedy_syndetic_cover(const FiniteGroupSpace& space, const Bitset& u, const Bitset& e);

struct ExactCover {
  CoverStatus status = CoverStatus::Undetermined;
  std::vector<std::size_t> cover;  // translate indices, best cover found
  std::size_t lower_bound = 0;
  std::optional<std::size_t> size() const {
    if (status == CoverStatus::Optimal) return cover.size();
    return std::nullopt;
  }
};

/// Minimum number of translates of U covering K, by branch-and-bound.
/// `cap` bounds the cover sizes searched; the identity is always used
/// (every cover can be translated to contain it).
ExactCover exact_min_cover(const FiniteGroupSpace& space, const Bitset& u, std::size_t cap = 64,
                           std::size_t node_budget = 2'000'000);

struct Theorem2Report {
  std::size_t k0 = 0;
  Bitset a, b, e, u;
  Rational m_a, m_b, m_e;
  GreedyCover greedy;
  bool covers = false;
  int64_t bound = 0;
  bool passed = false;
};

/// E = A ∩ k0 B^{-1} with k0 the best translate, U = AB, greedy cover of
/// U k0^{-1} from E, then checks F U = K and |F| <= floor(1/(m(A) m(B))).
Theorem2Report theorem2_bound_check(const FiniteGroupSpace& space, const Bitset& a, const Bitset& b);

/// {"len": n, "hex": ...}, bit i of the set is bit i of the hex number.
nlohmann::json bitset_json(const Bitset& s);
Bitset bitset_from_json(const nlohmann::json& j);

/// Audit record {K, A, B, E, m_E, U, picks, F, bound, passed}.
nlohmann::json audit_json(const FiniteGroupSpace& space, const Theorem2Report& report);

}  // namespace prodset
