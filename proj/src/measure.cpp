#include "prodset/measure.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <iomanip>
#include <sstream>
#include <unordered_set>

#include "prodset/error.hpp"

namespace prodset {

SparseMeasure::SparseMeasure(GroupDescriptor desc, Atoms atoms, double pruned_mass)
    : desc_(std::move(desc)), atoms_(std::move(atoms)), pruned_mass_(pruned_mass) {
  for (const auto& [g, w] : atoms_) {
    if (!desc_.contains(g)) throw DescriptorMismatch("measure atom outside " + desc_.to_string());
    if (!(w > 0.0)) throw InvalidArgument("measure weights must be positive");
  }
  double total = 0;
  for (const auto& [g, w] : atoms_) total += w;
  if (std::abs(total + pruned_mass_ - 1.0) > 1e-9) {
    throw InvalidArgument("measure mass " + std::to_string(total) + " plus pruned mass is not 1");
  }
}

SparseMeasure SparseMeasure::dirac(const GroupDescriptor& desc, const GroupElement& g) {
  return SparseMeasure(desc, Atoms{{g, 1.0}});
}

SparseMeasure SparseMeasure::simple_random_walk(const GroupDescriptor& desc) {
  return uniform(desc, desc.generators());
}

SparseMeasure SparseMeasure::uniform(const GroupDescriptor& desc, const std::vector<GroupElement>& support) {
  if (support.empty()) throw InvalidArgument("uniform measure needs a nonempty support");
  Atoms atoms;
  const double w = 1.0 / static_cast<double>(support.size());
  for (const auto& g : support) atoms[g] += w;
  return SparseMeasure(desc, std::move(atoms));
}

SparseMeasure SparseMeasure::parse(const GroupDescriptor& desc, std::string_view text) {
  Atoms atoms;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string elem;
    double w = 0;
    if (!(ls >> elem)) continue;
    if (!(ls >> w)) throw ParseError("measure line " + std::to_string(lineno) + ": missing weight");
    atoms[desc.parse_element(elem)] += w;
  }
  return SparseMeasure(desc, std::move(atoms));
}

std::string SparseMeasure::serialize() const {
  std::ostringstream os;
  os << std::setprecision(17);
  for (const auto& [g, w] : sorted_atoms()) os << desc_.format(g) << ' ' << w << '\n';
  return os.str();
}

double SparseMeasure::mass() const {
  // Summed in canonical order so the result is independent of hashing.
  double m = 0;
  for (const auto& [g, w] : sorted_atoms()) m += w;
  return m;
}

double SparseMeasure::weight(const GroupElement& g) const {
  auto it = atoms_.find(g);
  return it == atoms_.end() ? 0.0 : it->second;
}

double SparseMeasure::mass_of(const std::function<bool(const GroupElement&)>& pred) const {
  double m = 0;
  for (const auto& [g, w] : sorted_atoms()) {
    if (pred(g)) m += w;
  }
  return m;
}

std::vector<std::pair<GroupElement, double>> SparseMeasure::sorted_atoms() const {
  std::vector<std::pair<GroupElement, double>> v(atoms_.begin(), atoms_.end());
  std::sort(v.begin(), v.end(), [this](const auto& a, const auto& b) { return desc_.less(a.first, b.first); });
  return v;
}

bool SparseMeasure::is_symmetric(double tol) const {
  for (const auto& [g, w] : atoms_) {
    if (std::abs(weight(desc_.inv(g)) - w) > tol) return false;
  }
  return true;
}

bool SparseMeasure::is_adapted(int64_t r_check) const {
  int64_t reach = 0;
  for (const auto& [g, w] : atoms_) reach = std::max(reach, desc_.length(g));
  const int64_t limit = r_check + reach;
  std::unordered_set<GroupElement, GroupElementHash> seen;
  std::deque<GroupElement> queue;
  for (const auto& [g, w] : atoms_) {
    if (desc_.length(g) <= limit && seen.insert(g).second) queue.push_back(g);
  }
  const std::size_t cap = predicted_ball_size(desc_, limit);
  if (cap > kDefaultBallCap) throw ResourceCapExceeded("adaptedness check ball too large", kDefaultBallCap);
  while (!queue.empty()) {
    GroupElement x = std::move(queue.front());
    queue.pop_front();
    for (const auto& [s, w] : atoms_) {
      GroupElement y = desc_.mul(x, s);
      if (desc_.length(y) <= limit && seen.insert(y).second) queue.push_back(std::move(y));
    }
  }
  const Ball ball = enumerate_ball(desc_, r_check);
  for (const auto& g : ball.elements()) {
    if (!seen.count(g)) return false;
  }
  return true;
}

namespace {

SparseMeasure convolve_capped(const SparseMeasure& mu, const SparseMeasure& nu, std::size_t cap) {
  if (!(mu.descriptor() == nu.descriptor())) throw DescriptorMismatch("convolve operands use different groups");
  const auto& d = mu.descriptor();
  SparseMeasure::Atoms out;
  out.reserve(std::min(mu.support_size() * nu.support_size(), cap));
  // (mu * nu)(x) = sum_g mu(g) nu(g^-1 x): each pair (g, h) lands on g h.
  const bool mu_outer = mu.support_size() <= nu.support_size();
  const auto& outer = mu_outer ? mu.atoms() : nu.atoms();
  const auto& inner = mu_outer ? nu.atoms() : mu.atoms();
  for (const auto& [g, p] : outer) {
    for (const auto& [h, q] : inner) {
      out[mu_outer ? d.mul(g, h) : d.mul(h, g)] += p * q;
    }
    if (out.size() > cap) {
      throw ResourceCapExceeded("convolution support exceeds " + std::to_string(cap) + " atoms", cap);
    }
  }
  const double pruned = 1.0 - (1.0 - mu.pruned_mass()) * (1.0 - nu.pruned_mass());
  return SparseMeasure(d, std::move(out), pruned);
}

SparseMeasure prune(SparseMeasure m, double tol) {
  if (tol <= 0.0) return m;
  SparseMeasure::Atoms kept;
  double dropped = m.pruned_mass();
  for (const auto& [g, w] : m.sorted_atoms()) {
    if (w < tol) {
      dropped += w;
    } else {
      kept.emplace(g, w);
    }
  }
  if (kept.empty()) throw InvalidArgument("pruning removed every atom");
  return SparseMeasure(m.descriptor(), std::move(kept), dropped);
}

}  // namespace

SparseMeasure convolve(const SparseMeasure& mu, const SparseMeasure& nu) {
  return convolve_capped(mu, nu, kDefaultSupportCap);
}

void for_each_power(const SparseMeasure& mu, int n, const PowerOptions& opts,
                    const std::function<void(int, const SparseMeasure&)>& fn) {
  if (n < 1) throw InvalidArgument("convolution power needs k >= 1");
  if (opts.prune_tol < 0.0 || opts.prune_tol > 1e-6) throw InvalidArgument("prune_tol must lie in [0, 1e-6]");
  SparseMeasure cur = prune(mu, opts.prune_tol);
  fn(1, cur);
  for (int k = 2; k <= n; ++k) {
    SparseMeasure next = [&] {
      try {
        return convolve_capped(cur, mu, opts.support_cap);
      } catch (const ResourceCapExceeded&) {
        throw ResourceCapExceeded("support of mu^{*" + std::to_string(k) + "} explodes", opts.support_cap);
      }
    }();
    cur = prune(std::move(next), opts.prune_tol);
    fn(k, cur);
  }
}

SparseMeasure convolution_power(const SparseMeasure& mu, int k, const PowerOptions& opts) {
  std::optional<SparseMeasure> result;
  for_each_power(mu, k, opts, [&](int j, const SparseMeasure& m) {
    if (j == k) result.emplace(m);
  });
  return *result;
}

}  // namespace prodset
