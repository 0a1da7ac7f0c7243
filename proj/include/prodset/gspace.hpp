#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "prodset/measure.hpp"

namespace prodset {

/// A finite set of states with a left action of a group, given by the
/// permutation each generator x_i induces.
class FiniteGSpace {
 public:
  /// generator_perms[i][y] = x_{i+1} . y
  FiniteGSpace(GroupDescriptor desc, std::size_t states, std::vector<std::vector<std::size_t>> generator_perms);

  /// Z acting on Z_n by +1.
  static FiniteGSpace rotation(std::size_t n);
  /// Z acting on two points by swapping them.
  static FiniteGSpace swap();
  static FiniteGSpace one_point(const GroupDescriptor& desc);

  const GroupDescriptor& descriptor() const { return desc_; }
  std::size_t size() const { return states_; }
  std::size_t act(const GroupElement& g, std::size_t y) const;

  /// P(y, y') = sum over g with g.y = y' of mu(g). Rows sum to 1.
  Eigen::MatrixXd transition(const SparseMeasure& mu) const;

 private:
  std::size_t act_letter(int64_t letter, std::size_t y) const;
  std::size_t act_power(std::size_t gen, int64_t power, std::size_t y) const;

  GroupDescriptor desc_;
  std::size_t states_;
  std::vector<std::vector<std::size_t>> perms_, inverse_perms_;
};

struct StationaryResult {
  Eigen::VectorXd nu;
  double residual = 0;  // ||nu P - nu||_1
  std::size_t rounds = 0;
  /// nu > 0 on every state reachable from its support.
  bool positive_on_class = false;
};

/// Fixed point of nu -> nu P found by repeated Cesàro averaging
/// nu <- (1/B) sum_{k<B} nu P^k. Throws NonConvergence at the round cap.
StationaryResult stationary_measure(const FiniteGSpace& space, const SparseMeasure& mu, double tol = 1e-12,
                                    std::size_t max_rounds = 100'000);

struct CesaroAverage {
  Eigen::VectorXd average;  // (1/n) sum_{k=1..n} P^k phi
  double integral = 0;      // ∫ phi dnu
  double deviation = 0;     // nu-weighted 2-norm of average - integral
};

CesaroAverage markov_cesaro_average(const FiniteGSpace& space, const SparseMeasure& mu, const Eigen::VectorXd& phi,
                                    int n);

/// (1/n) sum_{k=1..n} mu^{*k}({g : g.y in B}).
double return_time_density(const FiniteGSpace& space, const SparseMeasure& mu, const std::vector<bool>& b,
                           std::size_t y, int n);

/// Largest deviation from a constant vector among eigenvectors of P with
/// eigenvalue within `eig_tol` of 1.
double unit_eigenvector_spread(const Eigen::MatrixXd& p, double eig_tol = 1e-8);

}  // namespace prodset
