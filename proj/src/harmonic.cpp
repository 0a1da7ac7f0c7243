#include "prodset/harmonic.hpp"

#include <cmath>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include "prodset/error.hpp"

namespace prodset {

double harmonic_check(const GroupFunction& f, const SparseMeasure& mu, int64_t r, HarmonicSide side) {
  const auto& d = mu.descriptor();
  const auto atoms = mu.sorted_atoms();
  double worst = 0;
  const Ball ball = enumerate_ball(d, r);
  for (const auto& g : ball.elements()) {
    double avg = 0;
    for (const auto& [h, w] : atoms) avg += w * f(side == HarmonicSide::Left ? d.mul(h, g) : d.mul(g, h));
    worst = std::max(worst, std::abs(f(g) - avg));
  }
  return worst;
}

// States: branch j in [0, L] along the path e = p_0, ..., p_L = w, and
// distance dist in [0, depth] from p_j (dist 0 is p_j itself). For j < L the
// distance is measured into subtrees hanging off the path at p_j; for j = L
// into the subtree below w.
std::size_t CylinderHarmonic::state(std::size_t branch, int dist) const {
  return branch * static_cast<std::size_t>(depth_ + 1) + static_cast<std::size_t>(dist);
}

CylinderHarmonic::CylinderHarmonic(GroupDescriptor desc, GroupElement prefix, int depth)
    : desc_(std::move(desc)), prefix_(std::move(prefix)), depth_(depth) {
  if (desc_.kind() != GroupKind::Free || desc_.arity() < 2) {
    throw InvalidArgument("cylinder harmonics need a free group of rank >= 2");
  }
  if (prefix_.size() == 0 || !desc_.contains(prefix_)) throw InvalidArgument("cylinder prefix must be a nonempty reduced word");
  if (depth_ < 1) throw InvalidArgument("truncation depth must be >= 1");

  const std::size_t L = prefix_.size();
  const double q = 2.0 * desc_.arity();
  escape_ = 1.0 / (q - 1.0);
  const std::size_t n = (L + 1) * static_cast<std::size_t>(depth_ + 1);

  using Triplet = Eigen::Triplet<double>;
  std::vector<Triplet> coeffs;
  Eigen::VectorXd rhs_lo = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  Eigen::VectorXd rhs_hi = rhs_lo;
  const double tail = std::pow(escape_, depth_);

  auto add = [&](std::size_t row, std::size_t col, double v) {
    coeffs.emplace_back(static_cast<int>(row), static_cast<int>(col), v);
  };

  for (std::size_t j = 0; j <= L; ++j) {
    for (int dist = 0; dist <= depth_; ++dist) {
      const std::size_t s = state(j, dist);
      add(s, s, 1.0);
      if (dist == depth_) {
        // Closure: from depth D the walk returns to p_j with probability
        // escape^D; otherwise the cylinder outcome is already decided.
        if (j < L) {
          rhs_lo[s] = 0.0;
          rhs_hi[s] = tail;
        } else {
          rhs_lo[s] = 1.0 - tail;
          rhs_hi[s] = 1.0;
        }
        continue;
      }
      if (dist > 0) {
        add(s, state(j, dist - 1), -1.0 / q);
        add(s, state(j, dist + 1), -(q - 1.0) / q);
        continue;
      }
      // On the path.
      double off = q;
      if (j > 0) {
        add(s, state(j - 1, 0), -1.0 / q);
        off -= 1.0;
      }
      if (j < L) {
        add(s, state(j + 1, 0), -1.0 / q);
        off -= 1.0;
      }
      add(s, state(j, 1), -off / q);
    }
  }

  Eigen::SparseMatrix<double> a(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  a.setFromTriplets(coeffs.begin(), coeffs.end());
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(a);
  if (lu.info() != Eigen::Success) throw Error("cylinder harmonic system is singular");
  Eigen::VectorXd xlo = lu.solve(rhs_lo);
  Eigen::VectorXd xhi = lu.solve(rhs_hi);
  // Round-off slack; the system is well conditioned (diagonally dominant).
  constexpr double slack = 1e-13;
  lo_.resize(n);
  hi_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    lo_[i] = std::max(0.0, xlo[static_cast<Eigen::Index>(i)] - slack);
    hi_[i] = std::min(1.0, xhi[static_cast<Eigen::Index>(i)] + slack);
  }
}

CertifiedValue CylinderHarmonic::at(const GroupElement& g) const {
  if (!desc_.contains(g)) throw DescriptorMismatch("element outside " + desc_.to_string());
  const std::size_t L = prefix_.size();
  std::size_t j = 0;
  while (j < L && j < g.size() && g[j] == prefix_[j]) ++j;
  const int dist = static_cast<int>(g.size() - j);
  if (dist <= depth_) return {lo_[state(j, dist)], hi_[state(j, dist)]};
  // Beyond the truncation: return to p_j with probability escape^dist.
  const double r = std::pow(escape_, dist);
  const double plo = lo_[state(j, 0)], phi = hi_[state(j, 0)];
  if (j < L) return {r * plo, r * phi};
  return {1.0 - r + r * plo, 1.0 - r + r * phi};
}

CertifiedValue free_cylinder_harmonic(const GroupDescriptor& desc, const GroupElement& prefix, const GroupElement& g,
                                      int depth) {
  return CylinderHarmonic(desc, prefix, depth).at(g);
}

std::vector<double> choi_effros_approx(const GroupFunction& phi, const GroupFunction& psi, const SparseMeasure& mu,
                                       const GroupElement& g, int n, const PowerOptions& opts) {
  const auto& d = mu.descriptor();
  std::vector<double> seq;
  for_each_power(mu, n, opts, [&](int, const SparseMeasure& m) {
    double acc = 0;
    for (const auto& [h, w] : m.sorted_atoms()) {
      const GroupElement x = d.mul(h, g);
      acc += w * phi(x) * psi(x);
    }
    seq.push_back(acc);
  });
  return seq;
}

}  // namespace prodset
