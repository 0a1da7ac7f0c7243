#include "prodset/structure.hpp"

#include <numeric>
#include <unordered_map>

#include "prodset/error.hpp"

namespace prodset {

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Witnessed:
      return "witnessed";
    case Outcome::Refuted:
      return "refuted";
    case Outcome::Undetermined:
      return "undetermined";
  }
  return "?";
}

ThickReport is_right_thick(const FiniteWindowSet& t, const Window& probe, const Window& search) {
  const auto& d = t.descriptor();
  if (!(d == probe.descriptor()) || !(d == search.descriptor())) {
    throw DescriptorMismatch("is_right_thick operands use different groups");
  }
  ThickReport r;
  for (const auto& g : search.elements()) {
    bool inside = true;
    for (const auto& p : probe.elements()) {
      if (t.membership(d.mul(p, g)) != Membership::In) {
        inside = false;
        break;
      }
    }
    if (inside) {
      r.outcome = Outcome::Witnessed;
      r.witness = g;
      return r;
    }
  }
  // A finite set is never thick in an infinite group.
  if (t.finite() && t.exact() && !d.is_finite()) {
    r.outcome = Outcome::Refuted;
    return r;
  }
  r.bounded_search = true;
  return r;
}

ThickReport is_right_thick(const PeriodicIntSet& t) {
  ThickReport r;
  if (t.is_all()) {
    r.outcome = Outcome::Witnessed;
    r.witness = GroupElement(std::vector<int64_t>{0});
  } else {
    r.outcome = Outcome::Refuted;
  }
  return r;
}

namespace {

IndexReport from_cover(const CoverResult& cr, const std::vector<GroupElement>& pool, bool exact_membership) {
  IndexReport r;
  r.search_status = cr.status;
  r.exact_in_pool = exact_membership;
  for (std::size_t i : cr.picks) r.cover.push_back(pool[i]);
  if (!cr.picks.empty()) r.index = cr.picks.size();
  switch (cr.status) {
    case CoverStatus::Optimal:
      r.outcome = Outcome::Witnessed;
      r.lower_bound = exact_membership ? cr.picks.size() : 1;
      break;
    case CoverStatus::ExceedsMax:
    case CoverStatus::Infeasible:
      r.outcome = exact_membership ? Outcome::Refuted : Outcome::Undetermined;
      r.lower_bound = exact_membership ? cr.lower_bound : 1;
      break;
    case CoverStatus::Undetermined:
      // An incumbent cover is verified but not certified minimal.
      r.outcome = Outcome::Undetermined;
      r.lower_bound = exact_membership ? cr.lower_bound : 1;
      break;
  }
  return r;
}

}  // namespace

IndexReport syndeticity_index(const FiniteWindowSet& c, const Window& target, const Window& pool,
                              const IndexOptions& opts) {
  if (opts.max_k < 1) throw InvalidArgument("max_k must be >= 1");
  const auto& d = c.descriptor();
  if (!(d == target.descriptor()) || !(d == pool.descriptor())) {
    throw DescriptorMismatch("syndeticity_index operands use different groups");
  }
  std::unordered_map<GroupElement, std::size_t, GroupElementHash> index_of;
  for (std::size_t i = 0; i < target.size(); ++i) index_of.emplace(target.elements()[i], i);

  CoverProblem prob;
  prob.universe = target.size();
  bool exact_membership = c.exact();
  for (const auto& f : pool.elements()) {
    Bitset cov(prob.universe);
    for (const auto& x : c.elements()) {
      auto it = index_of.find(d.mul(f, x));
      if (it != index_of.end()) cov.set(it->second);
    }
    if (exact_membership && !c.finite()) {
      // Every target point must have its preimage f^-1 t inside C's window.
      const GroupElement fi = d.inv(f);
      for (const auto& t : target.elements()) {
        if (!c.window().contains(d.mul(fi, t))) {
          exact_membership = false;
          break;
        }
      }
    }
    prob.candidates.push_back(std::move(cov));
  }
  CoverOptions co;
  co.max_size = opts.max_k;
  co.node_budget = opts.node_budget;
  return from_cover(minimum_cover(prob, co), pool.elements(), exact_membership);
}

IndexReport syndeticity_index(const PeriodicIntSet& c, const IndexOptions& opts) {
  if (opts.max_k < 1) throw InvalidArgument("max_k must be >= 1");
  const auto n = c.normalized();
  const int64_t m = n.modulus();
  IndexReport r;
  r.exact_in_pool = true;
  if (n.is_empty()) {
    r.outcome = Outcome::Refuted;
    r.search_status = CoverStatus::Infeasible;
    return r;
  }
  CoverProblem prob;
  prob.universe = static_cast<std::size_t>(m);
  for (int64_t t = 0; t < m; ++t) {
    Bitset cov(prob.universe);
    for (int64_t x : n.residues()) cov.set(static_cast<std::size_t>((t + x) % m));
    prob.candidates.push_back(std::move(cov));
  }
  CoverOptions co;
  co.max_size = opts.max_k;
  co.node_budget = opts.node_budget;
  co.forced = {0};  // translation invariance: some optimum contains 0
  const auto cr = minimum_cover(prob, co);
  std::vector<GroupElement> pool;
  for (int64_t t = 0; t < m; ++t) pool.emplace_back(std::vector<int64_t>{t});
  return from_cover(cr, pool, true);
}

PWReport is_piecewise_syndetic(const FiniteWindowSet& c, const Window& f_pool, const Window& probe,
                               const Window& search, const PWOptions& opts) {
  const auto& d = c.descriptor();
  if (!(d == f_pool.descriptor()) || !(d == probe.descriptor()) || !(d == search.descriptor())) {
    throw DescriptorMismatch("is_piecewise_syndetic operands use different groups");
  }
  PWReport r;
  const auto& pool = f_pool.elements();
  std::vector<GroupElement> pool_inv;
  for (const auto& f : pool) pool_inv.push_back(d.inv(f));

  auto in_fc = [&](const std::vector<std::size_t>& pick, const GroupElement& x) {
    for (std::size_t i : pick) {
      if (c.membership(d.mul(pool_inv[i], x)) == Membership::In) return true;
    }
    return false;
  };

  for (std::size_t size = 1; size <= std::min(opts.max_f_size, pool.size()); ++size) {
    std::vector<std::size_t> pick(size);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
      if (++r.subsets_tried > opts.subset_budget) {
        r.bounded_search = true;
        return r;
      }
      for (const auto& g : search.elements()) {
        bool inside = true;
        for (const auto& p : probe.elements()) {
          if (!in_fc(pick, d.mul(p, g))) {
            inside = false;
            break;
          }
        }
        if (inside) {
          r.outcome = Outcome::Witnessed;
          for (std::size_t i : pick) r.f.push_back(pool[i]);
          r.witness = g;
          return r;
        }
      }
      // next combination in lexicographic order
      std::size_t i = size;
      while (i > 0 && pick[i - 1] == pool.size() - size + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  r.bounded_search = true;
  return r;
}

PWReport is_piecewise_syndetic(const PeriodicIntSet& c) {
  PWReport r;
  const auto idx = syndeticity_index(c, IndexOptions{static_cast<std::size_t>(c.normalized().modulus()), 10'000'000});
  if (idx.outcome == Outcome::Witnessed) {
    r.outcome = Outcome::Witnessed;
    r.f = idx.cover;
    r.witness = GroupElement(std::vector<int64_t>{0});
  } else {
    r.outcome = idx.outcome;
  }
  return r;
}

}  // namespace prodset
