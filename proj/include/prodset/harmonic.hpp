#pragma once

#include <functional>
#include <vector>

#include "prodset/measure.hpp"

namespace prodset {

using GroupFunction = std::function<double(const GroupElement&)>;

enum class HarmonicSide {
  Left,  // f(g) = sum_h mu(h) f(h g)
  Right  // f(g) = sum_h mu(h) f(g h)
};

/// max over g in Ball(r) of |f(g) - sum_h mu(h) f(h g)| (or f(g h) on the
/// right).
double harmonic_check(const GroupFunction& f, const SparseMeasure& mu, int64_t r,
                      HarmonicSide side = HarmonicSide::Left);

struct CertifiedValue {
  double lo = 0;
  double hi = 0;
  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

/// Hitting probability of a boundary cylinder for the simple random walk on
/// F_k (k >= 2): h_w(g) = P[the limit word of g s_1 s_2 ... begins with w].
///
/// The walk is lumped by (branch point on the path e -> w, distance from
/// it), truncated at `depth`, and solved twice with the two extreme closures
/// at the truncation layer. The true value lies in [lo, hi].
class CylinderHarmonic {
 public:
  CylinderHarmonic(GroupDescriptor desc, GroupElement prefix, int depth);

  CertifiedValue at(const GroupElement& g) const;
  double operator()(const GroupElement& g) const { return at(g).mid(); }
  /// The left-harmonic companion g -> h_w(g^-1).
  double left(const GroupElement& g) const { return at(desc_.inv(g)).mid(); }

  const GroupElement& prefix() const { return prefix_; }
  int depth() const { return depth_; }

 private:
  std::size_t state(std::size_t branch, int dist) const;

  GroupDescriptor desc_;
  GroupElement prefix_;
  int depth_;
  double escape_;  // probability of ever stepping back toward a fixed vertex
  std::vector<double> lo_, hi_;
};

CertifiedValue free_cylinder_harmonic(const GroupDescriptor& desc, const GroupElement& prefix, const GroupElement& g,
                                      int depth);

/// Integrand sequence k -> ∫ phi(h g) psi(h g) dmu^{*k}(h) for k = 1..n.
std::vector<double> choi_effros_approx(const GroupFunction& phi, const GroupFunction& psi, const SparseMeasure& mu,
                                       const GroupElement& g, int n, const PowerOptions& opts = {});

}  // namespace prodset
