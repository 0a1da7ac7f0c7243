#include "prodset/compact_cover.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "prodset/error.hpp"

namespace prodset {

FiniteGroupSpace::FiniteGroupSpace(GroupDescriptor desc) : desc_(std::move(desc)), order_(0) {
  if (desc_.kind() != GroupKind::Cyclic) throw InvalidArgument("finite group space needs a cyclic product descriptor");
  radix_ = desc_.moduli();
  order_ = static_cast<std::size_t>(desc_.order());
}

FiniteGroupSpace FiniteGroupSpace::cyclic(int64_t n) { return FiniteGroupSpace(GroupDescriptor::cyclic({n})); }

std::size_t FiniteGroupSpace::index(const GroupElement& g) const {
  if (!desc_.contains(g)) throw DescriptorMismatch("element outside " + desc_.to_string());
  std::size_t idx = 0;
  for (std::size_t i = 0; i < radix_.size(); ++i) idx = idx * radix_[i] + static_cast<std::size_t>(g[i]);
  return idx;
}

GroupElement FiniteGroupSpace::element(std::size_t i) const {
  std::vector<int64_t> r(radix_.size());
  for (std::size_t p = radix_.size(); p-- > 0;) {
    r[p] = static_cast<int64_t>(i % radix_[p]);
    i /= radix_[p];
  }
  return GroupElement(std::move(r));
}

std::size_t FiniteGroupSpace::mul(std::size_t i, std::size_t j) const {
  if (radix_.size() == 1) return (i + j) % order_;
  std::size_t out = 0, stride = 1;
  for (std::size_t p = radix_.size(); p-- > 0;) {
    const auto m = static_cast<std::size_t>(radix_[p]);
    out += ((i % m + j % m) % m) * stride;
    i /= m;
    j /= m;
    stride *= m;
  }
  return out;
}

std::size_t FiniteGroupSpace::inv(std::size_t i) const {
  if (radix_.size() == 1) return (order_ - i) % order_;
  std::size_t out = 0, stride = 1;
  for (std::size_t p = radix_.size(); p-- > 0;) {
    const auto m = static_cast<std::size_t>(radix_[p]);
    out += ((m - i % m) % m) * stride;
    i /= m;
    stride *= m;
  }
  return out;
}

Bitset FiniteGroupSpace::full() const {
  Bitset s(order_);
  s.set();
  return s;
}

Bitset FiniteGroupSpace::subset(const std::vector<std::size_t>& indices) const {
  Bitset s(order_);
  for (std::size_t i : indices) {
    if (i >= order_) throw InvalidArgument("subset index out of range");
    s.set(i);
  }
  return s;
}

Bitset FiniteGroupSpace::subset_of(const std::vector<GroupElement>& elements) const {
  Bitset s(order_);
  for (const auto& g : elements) s.set(index(g));
  return s;
}

std::vector<std::size_t> FiniteGroupSpace::members(const Bitset& s) const {
  std::vector<std::size_t> out;
  for (auto i = s.find_first(); i != Bitset::npos; i = s.find_next(i)) out.push_back(i);
  return out;
}

Rational FiniteGroupSpace::measure(const Bitset& s) const {
  return Rational(static_cast<int64_t>(s.count()), static_cast<int64_t>(order_));
}

Bitset FiniteGroupSpace::translate(std::size_t k, const Bitset& s) const {
  Bitset out(order_);
  for (auto i = s.find_first(); i != Bitset::npos; i = s.find_next(i)) out.set(mul(k, i));
  return out;
}

Bitset FiniteGroupSpace::translate_right(const Bitset& s, std::size_t k) const {
  Bitset out(order_);
  for (auto i = s.find_first(); i != Bitset::npos; i = s.find_next(i)) out.set(mul(i, k));
  return out;
}

Bitset FiniteGroupSpace::inverse(const Bitset& s) const {
  Bitset out(order_);
  for (auto i = s.find_first(); i != Bitset::npos; i = s.find_next(i)) out.set(inv(i));
  return out;
}

Bitset FiniteGroupSpace::random_subset(double min_measure, Rng& rng) const {
  const double p = min_measure + (0.5 - min_measure) * uniform01(rng);
  Bitset s(order_);
  for (std::size_t i = 0; i < order_; ++i) {
    if (uniform01(rng) < p) s.set(i);
  }
  const auto need = static_cast<std::size_t>(std::ceil(min_measure * static_cast<double>(order_)));
  while (s.count() < std::max<std::size_t>(need, 1)) {
    s.set(static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int64_t>(order_) - 1)));
  }
  return s;
}

TranslateResult best_translate(const FiniteGroupSpace& space, const Bitset& c, const Bitset& d) {
  if (c.none() || d.none()) throw InvalidArgument("best_translate needs nonempty sets");
  std::size_t best_k = 0, best = 0;
  bool first = true;
  for (std::size_t k = 0; k < space.order(); ++k) {
    const std::size_t ov = (c & space.translate(k, d)).count();
    if (first || ov > best) {
      best = ov;
      best_k = k;
      first = false;
    }
  }
  TranslateResult r{best_k, Rational(static_cast<int64_t>(best), static_cast<int64_t>(space.order()))};
  if (r.overlap < space.measure(c) * space.measure(d)) {
    throw Error("best_translate overlap below m(C)m(D)");
  }
  return r;
}

Bitset correlation_set(const FiniteGroupSpace& space, const Bitset& a, const Bitset& b) {
  Bitset u = space.empty();
  for (auto j = b.find_first(); j != Bitset::npos; j = b.find_next(j)) u |= space.translate_right(a, space.inv(j));
  return u;
}

GreedyCover greedy_syndetic_cover(const FiniteGroupSpace& space, const Bitset& u, const Bitset& e) {
  if (e.none()) throw InvalidArgument("greedy_syndetic_cover needs E of positive measure");
  const Bitset correlated = correlation_set(space, e, e);
  const Bitset missing = correlated - u;
  if (missing.any()) {
    const auto k = missing.find_first();
    throw HypothesisViolation("U misses k = " + space.descriptor().format(space.element(k)) +
                                  " although E and kE intersect",
                              k);
  }

  GreedyCover out;
  out.covered = space.empty();
  out.bound = floor_of(Rational(1) / space.measure(e));
  Bitset ledger = space.empty();
  for (auto k = (~out.covered).find_first(); k != Bitset::npos; k = (~out.covered).find_first()) {
    const Bitset ke = space.translate(k, e);
    if ((ke & ledger).any()) {
      throw Error("translate " + space.descriptor().format(space.element(k)) + "E meets an earlier translate");
    }
    ledger |= ke;
    out.covered |= space.translate(k, u);
    out.picks.push_back(k);
  }
  if (static_cast<int64_t>(out.picks.size()) > out.bound) throw Error("greedy cover exceeds floor(1/m(E))");
  return out;
}

ExactCover exact_min_cover(const FiniteGroupSpace& space, const Bitset& u, std::size_t cap,
                           std::size_t node_budget) {
  CoverProblem problem;
  problem.universe = space.order();
  problem.candidates.reserve(space.order());
  for (std::size_t k = 0; k < space.order(); ++k) problem.candidates.push_back(space.translate(k, u));
  CoverOptions opts;
  opts.max_size = cap;
  opts.node_budget = node_budget;
  opts.forced = {space.identity()};
  const CoverResult r = minimum_cover(problem, opts);
  return ExactCover{r.status, r.picks, r.lower_bound};
}

Theorem2Report theorem2_bound_check(const FiniteGroupSpace& space, const Bitset& a, const Bitset& b) {
  Theorem2Report rep;
  rep.a = a;
  rep.b = b;
  rep.m_a = space.measure(a);
  rep.m_b = space.measure(b);
  if (a.none() || b.none()) throw InvalidArgument("theorem2_bound_check needs m(A), m(B) > 0");

  const Bitset b_inv = space.inverse(b);
  rep.k0 = best_translate(space, a, b_inv).k0;
  rep.e = a & space.translate(rep.k0, b_inv);
  rep.m_e = space.measure(rep.e);
  rep.u = correlation_set(space, a, b_inv);

  const Bitset shifted = space.translate_right(rep.u, space.inv(rep.k0));
  rep.greedy = greedy_syndetic_cover(space, shifted, rep.e);

  Bitset fu = space.empty();
  for (std::size_t f : rep.greedy.picks) fu |= space.translate(f, rep.u);
  rep.covers = fu.all();
  rep.bound = floor_of(Rational(1) / (rep.m_a * rep.m_b));
  rep.passed = rep.covers && static_cast<int64_t>(rep.greedy.picks.size()) <= rep.bound;
  return rep;
}

nlohmann::json bitset_json(const Bitset& s) {
  static const char* digits = "0123456789abcdef";
  const std::size_t n = s.size();
  const std::size_t nd = std::max<std::size_t>((n + 3) / 4, 1);
  std::string hex(nd, '0');
  for (std::size_t d = 0; d < nd; ++d) {
    unsigned v = 0;
    for (std::size_t b = 0; b < 4; ++b) {
      const std::size_t bit = 4 * d + b;
      if (bit < n && s.test(bit)) v |= 1u << b;
    }
    hex[nd - 1 - d] = digits[v];
  }
  return {{"len", n}, {"hex", hex}};
}

Bitset bitset_from_json(const nlohmann::json& j) {
  const auto n = j.at("len").get<std::size_t>();
  const auto hex = j.at("hex").get<std::string>();
  Bitset s(n);
  const std::size_t nd = hex.size();
  for (std::size_t d = 0; d < nd; ++d) {
    const char c = hex[nd - 1 - d];
    unsigned v;
    if (c >= '0' && c <= '9') v = c - '0';
    else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
    else throw ParseError("bad hex digit in bitset");
    for (std::size_t b = 0; b < 4; ++b) {
      if (!(v & (1u << b))) continue;
      const std::size_t bit = 4 * d + b;
      if (bit >= n) throw ParseError("bitset hex exceeds declared length");
      s.set(bit);
    }
  }
  return s;
}

nlohmann::json audit_json(const FiniteGroupSpace& space, const Theorem2Report& r) {
  const auto& desc = space.descriptor();
  nlohmann::json picks = nlohmann::json::array();
  for (std::size_t k : r.greedy.picks) picks.push_back(desc.format(space.element(k)));
  std::vector<std::size_t> sorted = r.greedy.picks;
  std::sort(sorted.begin(), sorted.end());
  nlohmann::json f = nlohmann::json::array();
  for (std::size_t k : sorted) f.push_back(desc.format(space.element(k)));
  char dec[32];
  std::snprintf(dec, sizeof dec, "%.12g", to_double(r.m_e));
  return {
      {"K", desc.to_string()},
      {"A", bitset_json(r.a)},
      {"B", bitset_json(r.b)},
      {"k0", desc.format(space.element(r.k0))},
      {"E", bitset_json(r.e)},
      {"m_E", {{"exact", to_string(r.m_e)}, {"decimal", dec}}},
      {"U", bitset_json(r.u)},
      {"picks", picks},
      {"F", f},
      {"bound", r.bound},
      {"passed", r.passed},
  };
}

}  // namespace prodset
