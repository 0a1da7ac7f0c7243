#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "prodset/rational.hpp"

namespace prodset {


/// {n in Z : n mod m in residues}. Serves as the exact density oracle on Z:
/// upper and lower Banach density both equal |residues| / m.
class PeriodicIntSet {
 public:
  PeriodicIntSet(int64_t modulus, std::vector<int64_t> residues);

  static PeriodicIntSet integers() { return PeriodicIntSet(1, {0}); }
  static PeriodicIntSet empty(int64_t modulus = 1) { return PeriodicIntSet(modulus, {}); }
  /// Parses "mod=m;residues=0,1,4".
  static PeriodicIntSet parse(std::string_view text);
  std::string to_string() const;

  int64_t modulus() const { return modulus_; }
  const std::vector<int64_t>& residues() const { return residues_; }
  bool contains(int64_t n) const;
  bool is_empty() const { return residues_.empty(); }
  bool is_all() const { return static_cast<int64_t>(residues_.size()) == modulus_; }
  Rational density() const { return Rational(static_cast<int64_t>(residues_.size()), modulus_); }

  /// Same set over a multiple of the modulus.
  PeriodicIntSet lift(int64_t modulus) const;
  /// Same set over its minimal period.
  PeriodicIntSet normalized() const;
  PeriodicIntSet complement() const;
  PeriodicIntSet negated() const;
  PeriodicIntSet translated(int64_t t) const;

  /// Set equality (independent of the chosen period).
  friend bool operator==(const PeriodicIntSet& a, const PeriodicIntSet& b);

 private:
  int64_t modulus_;
  std::vector<int64_t> residues_;
};

/// Sumset over Z; the result uses modulus lcm(m_A, m_B).
PeriodicIntSet periodic_product(const PeriodicIntSet& a, const PeriodicIntSet& b);

/// F + A for a finite set F of integers.
PeriodicIntSet translate_union(const std::vector<int64_t>& f, const PeriodicIntSet& a);

}  // namespace prodset
