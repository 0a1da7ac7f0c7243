#include "prodset/density.hpp"

#include <algorithm>
#include <cmath>

#include "prodset/error.hpp"
#include "prodset/rng.hpp"

namespace prodset {

WalkDensity cesaro_walk_density(const SparseMeasure& mu, const std::function<bool(const GroupElement&)>& a, int n,
                                const PowerOptions& opts) {
  if (n < 1) throw InvalidArgument("walk density needs n >= 1");
  if (!mu.is_symmetric()) throw InvalidArgument("walk density needs a symmetric measure");
  if (!mu.is_adapted(1)) throw InvalidArgument("walk density needs an adapted measure");
  WalkDensity out;
  double sum = 0, pruned_sum = 0;
  for_each_power(mu, n, opts, [&](int k, const SparseMeasure& m) {
    const double in_a = m.mass_of(a);
    sum += in_a;
    pruned_sum += m.pruned_mass();
    out.rows.push_back({k, in_a, sum / k, m.pruned_mass()});
  });
  out.value = sum / n;
  out.upper = std::min(1.0, (sum + pruned_sum) / n);
  return out;
}

namespace {

struct Sampler {
  std::vector<GroupElement> atoms;
  std::vector<double> cdf;

  explicit Sampler(const SparseMeasure& mu) {
    double acc = 0;
    for (const auto& [g, w] : mu.sorted_atoms()) {
      atoms.push_back(g);
      acc += w;
      cdf.push_back(acc);
    }
    for (double& c : cdf) c /= acc;
  }

  const GroupElement& draw(Rng& rng) const {
    const double u = uniform01(rng);
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    return atoms[std::min<std::size_t>(it - cdf.begin(), atoms.size() - 1)];
  }
};

}  // namespace

MonteCarloEstimate monte_carlo_walk_density(const SparseMeasure& mu,
                                            const std::function<bool(const GroupElement&)>& a, int n,
                                            std::size_t walks, uint64_t seed) {
  if (n < 1 || walks < 2) throw InvalidArgument("Monte-Carlo density needs n >= 1 and >= 2 walks");
  const auto& d = mu.descriptor();
  Sampler sampler(mu);
  double sum = 0, sum_sq = 0;
  Rng rng(mix64(seed));
  for (std::size_t w = 0; w < walks; ++w) {
    GroupElement x = d.identity();
    int hits = 0;
    for (int k = 1; k <= n; ++k) {
      x = d.mul(x, sampler.draw(rng));
      if (a(x)) ++hits;
    }
    const double avg = static_cast<double>(hits) / n;
    sum += avg;
    sum_sq += avg * avg;
  }
  MonteCarloEstimate est;
  est.samples = walks;
  est.mean = sum / walks;
  const double var = std::max(0.0, (sum_sq - walks * est.mean * est.mean) / (walks - 1));
  est.std_error = std::sqrt(var / walks);
  return est;
}

std::vector<double> monte_carlo_cesaro_profile(const SparseMeasure& mu,
                                               const std::function<bool(const GroupElement&)>& a, int n,
                                               std::size_t walks, uint64_t seed) {
  if (n < 1 || walks < 1) throw InvalidArgument("Monte-Carlo profile needs n >= 1 and walks >= 1");
  const auto& d = mu.descriptor();
  Sampler sampler(mu);
  std::vector<std::size_t> hits(n, 0);
  Rng rng(mix64(seed));
  for (std::size_t w = 0; w < walks; ++w) {
    GroupElement x = d.identity();
    for (int k = 1; k <= n; ++k) {
      x = d.mul(x, sampler.draw(rng));
      if (a(x)) ++hits[k - 1];
    }
  }
  std::vector<double> profile(n);
  double acc = 0;
  for (int k = 1; k <= n; ++k) {
    acc += static_cast<double>(hits[k - 1]) / walks;
    profile[k - 1] = acc / k;
  }
  return profile;
}

Rational folner_upper_density(const FiniteWindowSet& a, int64_t n, const Window& starts) {
  if (n < 1) throw InvalidArgument("Følner window length must be >= 1");
  const auto& d = a.descriptor();
  if (d.kind() != GroupKind::Lattice) throw InvalidArgument("Følner density is defined here for Z^d");
  const int dim = d.arity();
  int64_t volume = 1;
  for (int i = 0; i < dim; ++i) volume *= n;
  int64_t best = 0;
  for (const auto& t : starts.elements()) {
    int64_t count = 0;
    for (const auto& x : a.elements()) {
      bool inside = true;
      for (int i = 0; i < dim; ++i) {
        if (x[i] < t[i] || x[i] >= t[i] + n) {
          inside = false;
          break;
        }
      }
      if (inside) ++count;
    }
    best = std::max(best, count);
  }
  return Rational(best, volume);
}

Rational folner_upper_density(const PeriodicIntSet& a, int64_t n, int64_t start_lo, int64_t start_hi) {
  if (n < 1) throw InvalidArgument("Følner window length must be >= 1");
  if (start_hi < start_lo) throw InvalidArgument("empty start range");
  int64_t best = 0;
  for (int64_t t = start_lo; t <= start_hi; ++t) {
    int64_t count = 0;
    for (int64_t x = t; x < t + n; ++x) count += a.contains(x) ? 1 : 0;
    best = std::max(best, count);
  }
  return Rational(best, n);
}

std::vector<double> free_return_probabilities(int rank, int n) {
  if (rank < 1 || n < 0) throw InvalidArgument("free_return_probabilities needs rank >= 1 and n >= 0");
  const double up = (2.0 * rank - 1) / (2.0 * rank);
  std::vector<double> dist(static_cast<std::size_t>(n) + 2, 0.0), next(dist.size());
  dist[0] = 1;
  std::vector<double> out{1.0};
  for (int k = 1; k <= n; ++k) {
    std::fill(next.begin(), next.end(), 0.0);
    next[1] += dist[0];
    for (std::size_t l = 1; l + 1 < dist.size(); ++l) {
      next[l + 1] += up * dist[l];
      next[l - 1] += (1 - up) * dist[l];
    }
    dist.swap(next);
    out.push_back(dist[0]);
  }
  return out;
}

}  // namespace prodset
