#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "prodset/measure.hpp"
#include "prodset/periodic.hpp"
#include "prodset/window_set.hpp"

namespace prodset {

struct WalkDensityRow {
  int k = 0;
  double mass_in_a = 0;   // mu^{*k}(A), lower bound when pruning is active
  double cesaro_avg = 0;  // (1/k) sum_{j<=k} mu^{*j}(A)
  double pruned_mass = 0; // mass of mu^{*k} lost to pruning
};

struct WalkDensity {
  /// (1/n) sum_{k=1..n} mu^{*k}(A); a rigorous lower bound.
  double value = 0;
  /// value + (1/n) sum_k pruned_k; the exact average lies in [value, upper].
  double upper = 0;
  std::vector<WalkDensityRow> rows;
};

/// Cesàro average of mu^{*k}(A). Requires mu symmetric and adapted.
WalkDensity cesaro_walk_density(const SparseMeasure& mu, const std::function<bool(const GroupElement&)>& a, int n,
                                const PowerOptions& opts = {});

struct MonteCarloEstimate {
  double mean = 0;
  double std_error = 0;
  std::size_t samples = 0;
};

/// Same quantity estimated by simulating `walks` independent walks
/// X_k = h_1 ... h_k with h_i ~ mu.
MonteCarloEstimate monte_carlo_walk_density(const SparseMeasure& mu,
                                            const std::function<bool(const GroupElement&)>& a, int n,
                                            std::size_t walks, uint64_t seed);

/// Running Cesàro averages (1/k) sum_{j<=k} P[X_j in A] for k = 1..n,
/// estimated from `walks` simulated walks.
std::vector<double> monte_carlo_cesaro_profile(const SparseMeasure& mu,
                                               const std::function<bool(const GroupElement&)>& a, int n,
                                               std::size_t walks, uint64_t seed);

/// P[X_k = e] for k = 0..n for the simple random walk on F_rank, from the
/// word-length chain (0 -> 1 surely; L -> L+1 with probability
/// (2 rank - 1) / (2 rank), else L -> L-1).
std::vector<double> free_return_probabilities(int rank, int n);

/// max over t in `starts` of |A ∩ (t + [0,n)^d)| / n^d.
Rational folner_upper_density(const FiniteWindowSet& a, int64_t n, const Window& starts);
/// Exact for periodic sets: with n = modulus the value is |R| / m.
Rational folner_upper_density(const PeriodicIntSet& a, int64_t n, int64_t start_lo, int64_t start_hi);

}  // namespace prodset
