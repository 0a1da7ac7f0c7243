#include "prodset/gspace.hpp"

#include <cmath>
#include <deque>

#include <Eigen/Eigenvalues>

#include "prodset/error.hpp"

namespace prodset {

FiniteGSpace::FiniteGSpace(GroupDescriptor desc, std::size_t states, std::vector<std::vector<std::size_t>> perms)
    : desc_(std::move(desc)), states_(states), perms_(std::move(perms)) {
  if (states_ == 0) throw InvalidArgument("G-space needs at least one state");
  if (static_cast<int>(perms_.size()) != desc_.arity()) throw InvalidArgument("one permutation per generator required");
  for (const auto& p : perms_) {
    if (p.size() != states_) throw InvalidArgument("permutation has the wrong length");
    std::vector<std::size_t> inv(states_, states_);
    for (std::size_t y = 0; y < states_; ++y) {
      if (p[y] >= states_ || inv[p[y]] != states_) throw InvalidArgument("generator action is not a permutation");
      inv[p[y]] = y;
    }
    inverse_perms_.push_back(std::move(inv));
  }
  if (desc_.kind() == GroupKind::Cyclic) {
    for (int i = 0; i < desc_.arity(); ++i) {
      for (std::size_t y = 0; y < states_; ++y) {
        if (act_power(i, desc_.moduli()[i], y) != y) throw InvalidArgument("generator order does not divide its modulus");
      }
    }
  }
  if (desc_.kind() != GroupKind::Free) {
    for (int i = 0; i < desc_.arity(); ++i) {
      for (int j = i + 1; j < desc_.arity(); ++j) {
        for (std::size_t y = 0; y < states_; ++y) {
          if (perms_[i][perms_[j][y]] != perms_[j][perms_[i][y]]) {
            throw InvalidArgument("generator actions of an abelian group must commute");
          }
        }
      }
    }
  }
}

FiniteGSpace FiniteGSpace::rotation(std::size_t n) {
  std::vector<std::size_t> p(n);
  for (std::size_t y = 0; y < n; ++y) p[y] = (y + 1) % n;
  return FiniteGSpace(GroupDescriptor::lattice(1), n, {p});
}

FiniteGSpace FiniteGSpace::swap() { return FiniteGSpace(GroupDescriptor::lattice(1), 2, {{1, 0}}); }

FiniteGSpace FiniteGSpace::one_point(const GroupDescriptor& desc) {
  return FiniteGSpace(desc, 1, std::vector<std::vector<std::size_t>>(desc.arity(), std::vector<std::size_t>{0}));
}

std::size_t FiniteGSpace::act_letter(int64_t letter, std::size_t y) const {
  const auto i = static_cast<std::size_t>(std::llabs(letter) - 1);
  return letter > 0 ? perms_[i][y] : inverse_perms_[i][y];
}

std::size_t FiniteGSpace::act_power(std::size_t gen, int64_t power, std::size_t y) const {
  const auto& p = power >= 0 ? perms_[gen] : inverse_perms_[gen];
  for (int64_t k = 0; k < std::llabs(power); ++k) y = p[y];
  return y;
}

std::size_t FiniteGSpace::act(const GroupElement& g, std::size_t y) const {
  if (!desc_.contains(g)) throw DescriptorMismatch("element outside " + desc_.to_string());
  if (y >= states_) throw InvalidArgument("state out of range");
  if (desc_.kind() == GroupKind::Free) {
    for (std::size_t k = g.size(); k-- > 0;) y = act_letter(g[k], y);
    return y;
  }
  for (int i = 0; i < desc_.arity(); ++i) y = act_power(i, g[i], y);
  return y;
}

Eigen::MatrixXd FiniteGSpace::transition(const SparseMeasure& mu) const {
  if (!(mu.descriptor() == desc_)) throw DescriptorMismatch("measure and G-space use different groups");
  const auto n = static_cast<Eigen::Index>(states_);
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  const double mass = 1.0 - mu.pruned_mass();
  for (const auto& [g, w] : mu.sorted_atoms()) {
    for (std::size_t y = 0; y < states_; ++y) {
      p(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(act(g, y))) += w / mass;
    }
  }
  return p;
}

StationaryResult stationary_measure(const FiniteGSpace& space, const SparseMeasure& mu, double tol,
                                    std::size_t max_rounds) {
  const Eigen::MatrixXd p = space.transition(mu);
  const auto n = p.rows();
  Eigen::RowVectorXd nu = Eigen::RowVectorXd::Constant(n, 1.0 / static_cast<double>(n));
  constexpr int block = 16;  // even, so period-2 components cancel exactly
  StationaryResult out;
  for (std::size_t round = 1; round <= max_rounds; ++round) {
    Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(n);
    Eigen::RowVectorXd cur = nu;
    for (int k = 0; k < block; ++k) {
      acc += cur;
      cur = cur * p;
    }
    nu = acc / block;
    nu /= nu.sum();
    out.residual = (nu * p - nu).lpNorm<1>();
    out.rounds = round;
    if (out.residual <= tol) break;
  }
  if (out.residual > tol) throw NonConvergence("stationary measure did not converge", out.residual);
  out.nu = nu.transpose();

  // Positivity on the closed class generated by the support.
  std::vector<bool> reach(static_cast<std::size_t>(n), false);
  std::deque<Eigen::Index> queue;
  for (Eigen::Index y = 0; y < n; ++y) {
    if (out.nu[y] > tol) {
      reach[y] = true;
      queue.push_back(y);
    }
  }
  while (!queue.empty()) {
    auto y = queue.front();
    queue.pop_front();
    for (Eigen::Index z = 0; z < n; ++z) {
      if (p(y, z) > 0 && !reach[z]) {
        reach[z] = true;
        queue.push_back(z);
      }
    }
  }
  out.positive_on_class = true;
  for (Eigen::Index y = 0; y < n; ++y) {
    if (reach[y] && !(out.nu[y] > 0)) out.positive_on_class = false;
  }
  return out;
}

CesaroAverage markov_cesaro_average(const FiniteGSpace& space, const SparseMeasure& mu, const Eigen::VectorXd& phi,
                                    int n) {
  if (n < 1) throw InvalidArgument("Cesàro average needs n >= 1");
  if (phi.size() != static_cast<Eigen::Index>(space.size())) throw InvalidArgument("state function has wrong length");
  const Eigen::MatrixXd p = space.transition(mu);
  const auto st = stationary_measure(space, mu);
  CesaroAverage out;
  Eigen::VectorXd cur = phi, acc = Eigen::VectorXd::Zero(phi.size());
  for (int k = 1; k <= n; ++k) {
    cur = p * cur;
    acc += cur;
  }
  out.average = acc / n;
  out.integral = st.nu.dot(phi);
  double dev = 0;
  for (Eigen::Index y = 0; y < phi.size(); ++y) {
    const double e = out.average[y] - out.integral;
    dev += st.nu[y] * e * e;
  }
  out.deviation = std::sqrt(dev);
  return out;
}

double return_time_density(const FiniteGSpace& space, const SparseMeasure& mu, const std::vector<bool>& b,
                           std::size_t y, int n) {
  if (b.size() != space.size()) throw InvalidArgument("state subset has wrong length");
  if (y >= space.size()) throw InvalidArgument("state out of range");
  Eigen::VectorXd ind(static_cast<Eigen::Index>(b.size()));
  for (std::size_t i = 0; i < b.size(); ++i) ind[static_cast<Eigen::Index>(i)] = b[i] ? 1.0 : 0.0;
  return markov_cesaro_average(space, mu, ind, n).average[static_cast<Eigen::Index>(y)];
}

double unit_eigenvector_spread(const Eigen::MatrixXd& p, double eig_tol) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(p);
  if (es.info() != Eigen::Success) throw Error("eigen-decomposition failed");
  double worst = 0;
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    if (std::abs(es.eigenvalues()[i] - std::complex<double>(1.0, 0.0)) > eig_tol) continue;
    Eigen::VectorXcd v = es.eigenvectors().col(i);
    v /= v.norm();
    for (Eigen::Index y = 1; y < v.size(); ++y) worst = std::max(worst, std::abs(v[y] - v[0]));
  }
  return worst;
}

}  // namespace prodset
