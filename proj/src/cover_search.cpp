#include "prodset/cover_search.hpp"

#include <algorithm>
#include <numeric>

#include "prodset/error.hpp"

namespace prodset {

namespace {

std::size_t ceil_div(std::size_t a, std::size_t b) { return b == 0 ? 0 : (a + b - 1) / b; }

class BranchAndBound {
 public:
  BranchAndBound(const CoverProblem& p, const CoverOptions& o) : p_(p), o_(o), covering_(p.universe) {
    for (std::size_t c = 0; c < p_.candidates.size(); ++c) {
      max_cover_ = std::max(max_cover_, p_.candidates[c].count());
      for (auto x = p_.candidates[c].find_first(); x != Bitset::npos; x = p_.candidates[c].find_next(x)) {
        covering_[x].push_back(c);
      }
    }
  }

  std::size_t max_cover() const { return max_cover_; }

  // Searches for covers strictly smaller than `bound`. Returns true if the
  // search completed within the node budget.
  bool run(Bitset uncovered, std::vector<std::size_t> chosen, std::size_t bound) {
    best_size_ = bound;
    dfs(uncovered, chosen);
    return !exhausted_;
  }

  const std::vector<std::size_t>& best() const { return best_; }
  std::size_t nodes() const { return nodes_; }

 private:
  void dfs(const Bitset& uncovered, std::vector<std::size_t>& chosen) {
    if (exhausted_) return;
    if (++nodes_ > o_.node_budget) {
      exhausted_ = true;
      return;
    }
    const std::size_t left = uncovered.count();
    if (left == 0) {
      if (chosen.size() < best_size_) {
        best_size_ = chosen.size();
        best_ = chosen;
      }
      return;
    }
    if (chosen.size() + ceil_div(left, max_cover_) >= best_size_) return;

    // Branch on the uncovered element with the fewest covering candidates
    // among the first few, lowest index on ties.
    std::size_t pivot = uncovered.find_first();
    std::size_t fewest = covering_[pivot].size();
    std::size_t scanned = 0;
    for (auto x = uncovered.find_next(pivot); x != Bitset::npos && scanned < 64; x = uncovered.find_next(x), ++scanned) {
      if (covering_[x].size() < fewest) {
        fewest = covering_[x].size();
        pivot = x;
      }
    }

    struct Branch {
      std::size_t candidate;
      Bitset gain;
      std::size_t count;
    };
    std::vector<Branch> branches;
    branches.reserve(covering_[pivot].size());
    for (std::size_t c : covering_[pivot]) {
      Bitset gain = p_.candidates[c] & uncovered;
      std::size_t n = gain.count();
      branches.push_back({c, std::move(gain), n});
    }
    std::stable_sort(branches.begin(), branches.end(),
                     [](const Branch& a, const Branch& b) { return a.count > b.count; });

    // Dominance: drop a branch whose gain is contained in an earlier kept
    // branch's gain (equal gains keep the first).
    std::vector<const Branch*> kept;
    const bool full_dominance = branches.size() <= 64;
    for (const auto& br : branches) {
      bool dominated = false;
      for (const Branch* k : kept) {
        if (full_dominance ? br.gain.is_subset_of(k->gain) : br.gain == k->gain) {
          dominated = true;
          break;
        }
      }
      if (!dominated) kept.push_back(&br);
    }

    for (const Branch* br : kept) {
      if (chosen.size() + 1 + ceil_div(left - br->count, max_cover_) >= best_size_) continue;
      chosen.push_back(br->candidate);
      Bitset next = uncovered - br->gain;
      dfs(next, chosen);
      chosen.pop_back();
      if (exhausted_) return;
    }
  }

  const CoverProblem& p_;
  const CoverOptions& o_;
  std::vector<std::vector<std::size_t>> covering_;
  std::size_t max_cover_ = 0;
  std::size_t best_size_ = 0;
  std::vector<std::size_t> best_;
  std::size_t nodes_ = 0;
  bool exhausted_ = false;
};

void validate(const CoverProblem& p, const std::vector<std::size_t>& forced) {
  for (const auto& c : p.candidates) {
    if (c.size() != p.universe) throw InvalidArgument("cover candidate size differs from universe");
  }
  for (std::size_t f : forced) {
    if (f >= p.candidates.size()) throw InvalidArgument("forced candidate out of range");
  }
}

}  // namespace

const char* to_string(CoverStatus s) {
  switch (s) {
    case CoverStatus::Optimal:
      return "optimal";
    case CoverStatus::ExceedsMax:
      return "exceeds_max";
    case CoverStatus::Infeasible:
      return "infeasible";
    case CoverStatus::Undetermined:
      return "undetermined";
  }
  return "?";
}

CoverResult greedy_cover(const CoverProblem& p, const std::vector<std::size_t>& forced) {
  validate(p, forced);
  CoverResult r;
  Bitset uncovered(p.universe);
  uncovered.set();
  for (std::size_t f : forced) {
    uncovered -= p.candidates[f];
    r.picks.push_back(f);
  }
  while (uncovered.any()) {
    std::size_t best = p.candidates.size(), best_gain = 0;
    for (std::size_t c = 0; c < p.candidates.size(); ++c) {
      std::size_t g = (p.candidates[c] & uncovered).count();
      if (g > best_gain) {
        best_gain = g;
        best = c;
      }
    }
    if (best_gain == 0) {
      r.status = CoverStatus::Infeasible;
      r.picks.clear();
      return r;
    }
    r.picks.push_back(best);
    uncovered -= p.candidates[best];
  }
  std::sort(r.picks.begin(), r.picks.end());
  r.picks.erase(std::unique(r.picks.begin(), r.picks.end()), r.picks.end());
  r.status = CoverStatus::Undetermined;  // greedy alone certifies only an upper bound
  return r;
}

CoverResult minimum_cover(const CoverProblem& p, const CoverOptions& o) {
  validate(p, o.forced);
  CoverResult out;
  if (p.universe == 0) {
    out.status = CoverStatus::Optimal;
    out.picks = o.forced;
    std::sort(out.picks.begin(), out.picks.end());
    return out;
  }
  const CoverResult greedy = greedy_cover(p, o.forced);
  if (greedy.picks.empty()) {
    out.status = CoverStatus::Infeasible;
    return out;
  }

  BranchAndBound bb(p, o);
  const std::size_t trivial_lb = std::max<std::size_t>(ceil_div(p.universe, bb.max_cover()), o.forced.empty() ? 1 : 0);

  Bitset uncovered(p.universe);
  uncovered.set();
  std::vector<std::size_t> chosen;
  for (std::size_t f : o.forced) {
    uncovered -= p.candidates[f];
    chosen.push_back(f);
  }

  std::vector<std::size_t> incumbent;
  std::size_t bound = o.max_size + 1;
  if (greedy.picks.size() <= o.max_size) {
    incumbent = greedy.picks;
    bound = incumbent.size();
  }
  const bool complete = bb.run(uncovered, chosen, bound);
  out.nodes = bb.nodes();
  if (!bb.best().empty() || (bound == 0)) incumbent = bb.best();
  if (!incumbent.empty()) {
    std::sort(incumbent.begin(), incumbent.end());
    incumbent.erase(std::unique(incumbent.begin(), incumbent.end()), incumbent.end());
  }

  if (complete) {
    if (!incumbent.empty()) {
      out.status = CoverStatus::Optimal;
      out.picks = incumbent;
      out.lower_bound = incumbent.size();
    } else {
      out.status = CoverStatus::ExceedsMax;
      out.lower_bound = o.max_size + 1;
    }
  } else {
    out.status = CoverStatus::Undetermined;
    out.picks = incumbent;
    out.lower_bound = std::min(trivial_lb, incumbent.empty() ? trivial_lb : incumbent.size());
  }
  return out;
}

}  // namespace prodset
