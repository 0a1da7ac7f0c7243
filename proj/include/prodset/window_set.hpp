#pragma once

#include <functional>
#include <vector>

#include "prodset/group.hpp"

namespace prodset {

enum class Membership { In, Out, Unknown };

/// A subset of G known only inside a window. `elements` are the members
/// found inside the window; when `exact` the list is the full intersection
/// of the true set with the window; when `finite` the true set lies
/// entirely inside the window.
class FiniteWindowSet {
 public:
  FiniteWindowSet(std::vector<GroupElement> elements, Window window, bool exact = true, bool finite = false);

  /// Members of `window` satisfying `pred`.
  static FiniteWindowSet from_predicate(const Window& window, const std::function<bool(const GroupElement&)>& pred);
  /// A finite set, known everywhere.
  static FiniteWindowSet finite_set(const GroupDescriptor& desc, std::vector<GroupElement> elements);

  const GroupDescriptor& descriptor() const { return window_.descriptor(); }
  const std::vector<GroupElement>& elements() const { return elements_; }
  const Window& window() const { return window_; }
  std::size_t size() const { return elements_.size(); }
  bool exact() const { return exact_; }
  bool finite() const { return finite_; }

  bool has(const GroupElement& g) const;
  Membership membership(const GroupElement& g) const;

  FiniteWindowSet inverse() const;

 private:
  std::vector<GroupElement> elements_;
  Window window_;
  bool exact_;
  bool finite_;
};

/// {a*b : a in A, b in B} restricted to `out_window`. The result is flagged
/// exact when the inputs' windows guarantee nothing is lost to truncation.
FiniteWindowSet product_set(const FiniteWindowSet& a, const FiniteWindowSet& b, const Window& out_window);

FiniteWindowSet difference_set(const FiniteWindowSet& a, const Window& out_window);

/// Intersection of windowed sets over the first set's window.
FiniteWindowSet intersect(const FiniteWindowSet& a, const FiniteWindowSet& b);

/// Reduced words of F_k whose first letter is `first` (signed letter index).
FiniteWindowSet words_beginning_with(const Window& window, std::vector<int64_t> first_letters);

}  // namespace prodset
