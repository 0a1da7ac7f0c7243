#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "prodset/group.hpp"

namespace prodset {

/// Finitely supported (sub-)probability measure on a group. Mass removed by
/// pruning is tracked in `pruned_mass` so that mass + pruned_mass = 1.
class SparseMeasure {
 public:
  using Atoms = std::unordered_map<GroupElement, double, GroupElementHash>;

  SparseMeasure(GroupDescriptor desc, Atoms atoms, double pruned_mass = 0.0);

  static SparseMeasure dirac(const GroupDescriptor& desc, const GroupElement& g);
  /// Uniform on the symmetric generating set (simple random walk).
  static SparseMeasure simple_random_walk(const GroupDescriptor& desc);
  static SparseMeasure uniform(const GroupDescriptor& desc, const std::vector<GroupElement>& support);

  /// Lines "word weight" or "integer weight" (lattice coordinates comma
  /// separated). Blank lines and '#' comments are ignored.
  static SparseMeasure parse(const GroupDescriptor& desc, std::string_view text);
  std::string serialize() const;

  const GroupDescriptor& descriptor() const { return desc_; }
  const Atoms& atoms() const { return atoms_; }
  std::size_t support_size() const { return atoms_.size(); }
  double pruned_mass() const { return pruned_mass_; }
  double mass() const;
  double weight(const GroupElement& g) const;
  double mass_of(const std::function<bool(const GroupElement&)>& pred) const;
  /// Atoms in canonical order.
  std::vector<std::pair<GroupElement, double>> sorted_atoms() const;

  bool is_symmetric(double tol = 1e-12) const;
  /// The support generates Ball(r) as a semigroup (checked by closure inside
  /// Ball(r + max support length)).
  bool is_adapted(int64_t r_check) const;

 private:
  GroupDescriptor desc_;
  Atoms atoms_;
  double pruned_mass_;
};

inline constexpr std::size_t kDefaultSupportCap = 5'000'000;

SparseMeasure convolve(const SparseMeasure& mu, const SparseMeasure& nu);

struct PowerOptions {
  double prune_tol = 0.0;
  std::size_t support_cap = kDefaultSupportCap;
};

/// mu^{*k}; atoms below prune_tol are dropped after each step and counted in
/// pruned_mass.
SparseMeasure convolution_power(const SparseMeasure& mu, int k, const PowerOptions& opts = {});

/// Calls fn(k, mu^{*k}) for k = 1..n, reusing each power for the next.
void for_each_power(const SparseMeasure& mu, int n, const PowerOptions& opts,
                    const std::function<void(int, const SparseMeasure&)>& fn);

}  // namespace prodset
