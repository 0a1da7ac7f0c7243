#include "prodset/window_set.hpp"

#include <algorithm>
#include <unordered_set>

#include "prodset/error.hpp"

namespace prodset {

FiniteWindowSet::FiniteWindowSet(std::vector<GroupElement> elements, Window window, bool exact, bool finite)
    : elements_(std::move(elements)), window_(std::move(window)), exact_(exact), finite_(finite) {
  const auto& d = window_.descriptor();
  std::sort(elements_.begin(), elements_.end(), d.comparator());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  for (const auto& g : elements_) {
    if (!d.contains(g)) throw DescriptorMismatch("set element outside " + d.to_string());
    if (!window_.contains(g)) throw InvalidArgument("set element " + d.format(g) + " lies outside its window");
  }
}

FiniteWindowSet FiniteWindowSet::from_predicate(const Window& window,
                                                const std::function<bool(const GroupElement&)>& pred) {
  std::vector<GroupElement> members;
  for (const auto& g : window.elements()) {
    if (pred(g)) members.push_back(g);
  }
  return FiniteWindowSet(std::move(members), window, true, false);
}

FiniteWindowSet FiniteWindowSet::finite_set(const GroupDescriptor& desc, std::vector<GroupElement> elements) {
  Window w(desc, elements);
  return FiniteWindowSet(std::move(elements), std::move(w), true, true);
}

bool FiniteWindowSet::has(const GroupElement& g) const {
  return std::binary_search(elements_.begin(), elements_.end(), g, descriptor().comparator());
}

Membership FiniteWindowSet::membership(const GroupElement& g) const {
  if (has(g)) return Membership::In;
  if (finite_ && exact_) return Membership::Out;
  if (exact_ && window_.contains(g)) return Membership::Out;
  return Membership::Unknown;
}

FiniteWindowSet FiniteWindowSet::inverse() const {
  const auto& d = descriptor();
  std::vector<GroupElement> inv_elems, inv_window;
  inv_elems.reserve(elements_.size());
  for (const auto& g : elements_) inv_elems.push_back(d.inv(g));
  std::optional<int64_t> r = window_.radius();
  if (!r) {
    inv_window.reserve(window_.size());
    for (const auto& g : window_.elements()) inv_window.push_back(d.inv(g));
  } else {
    inv_window = window_.elements();  // balls are symmetric
  }
  return FiniteWindowSet(std::move(inv_elems), Window(d, std::move(inv_window), r), exact_, finite_);
}

namespace {

int64_t max_length(const GroupDescriptor& d, const std::vector<GroupElement>& xs) {
  int64_t m = 0;
  for (const auto& x : xs) m = std::max(m, d.length(x));
  return m;
}

// True when, for every x in `xs` and g in `out`, the element x^-1 g (left)
// or g x^-1 (right) lies inside `known`.
bool quotients_inside(const GroupDescriptor& d, const std::vector<GroupElement>& xs, const Window& out,
                      const Window& known, bool left) {
  if (known.radius() && out.radius()) {
    if (max_length(d, xs) + *out.radius() <= *known.radius()) return true;
  }
  if (xs.size() * out.size() > 4'000'000) return false;
  for (const auto& x : xs) {
    const GroupElement xi = d.inv(x);
    for (const auto& g : out.elements()) {
      if (!known.contains(left ? d.mul(xi, g) : d.mul(g, xi))) return false;
    }
  }
  return true;
}

}  // namespace

FiniteWindowSet product_set(const FiniteWindowSet& a, const FiniteWindowSet& b, const Window& out_window) {
  const auto& d = a.descriptor();
  if (!(d == b.descriptor()) || !(d == out_window.descriptor())) {
    throw DescriptorMismatch("product_set operands use different groups");
  }
  std::unordered_set<GroupElement, GroupElementHash> seen;
  for (const auto& x : a.elements()) {
    for (const auto& y : b.elements()) {
      GroupElement g = d.mul(x, y);
      if (out_window.contains(g)) seen.insert(std::move(g));
    }
  }
  bool exact = false;
  if (a.exact() && b.exact()) {
    if (a.finite() && b.finite()) {
      exact = true;
    } else if (a.finite() && quotients_inside(d, a.elements(), out_window, b.window(), true)) {
      exact = true;
    } else if (b.finite() && quotients_inside(d, b.elements(), out_window, a.window(), false)) {
      exact = true;
    }
  }
  return FiniteWindowSet(std::vector<GroupElement>(seen.begin(), seen.end()), out_window, exact, false);
}

FiniteWindowSet difference_set(const FiniteWindowSet& a, const Window& out_window) {
  return product_set(a, a.inverse(), out_window);
}

FiniteWindowSet intersect(const FiniteWindowSet& a, const FiniteWindowSet& b) {
  if (!(a.descriptor() == b.descriptor())) throw DescriptorMismatch("intersect operands use different groups");
  std::vector<GroupElement> out;
  for (const auto& g : a.elements()) {
    if (b.has(g)) out.push_back(g);
  }
  bool exact = a.exact() && b.exact();
  if (exact && !b.finite()) {
    for (const auto& g : a.window().elements()) {
      if (!b.window().contains(g)) {
        exact = false;
        break;
      }
    }
  }
  return FiniteWindowSet(std::move(out), a.window(), exact, a.finite() || b.finite());
}

FiniteWindowSet words_beginning_with(const Window& window, std::vector<int64_t> first_letters) {
  if (window.descriptor().kind() != GroupKind::Free) throw InvalidArgument("words_beginning_with needs a free group");
  return FiniteWindowSet::from_predicate(window, [&](const GroupElement& g) {
    return g.size() > 0 && std::find(first_letters.begin(), first_letters.end(), g[0]) != first_letters.end();
  });
}

}  // namespace prodset
