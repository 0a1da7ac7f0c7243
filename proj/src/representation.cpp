#include "prodset/representation.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "prodset/error.hpp"

namespace prodset {

namespace {

constexpr double kUnitaryTol = 1e-10;

Eigen::MatrixXcd matrix_power(const Eigen::MatrixXcd& m, int64_t k) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  Eigen::MatrixXcd base = m;
  while (k > 0) {
    if (k & 1) out = out * base;
    base = base * base;
    k >>= 1;
  }
  return out;
}

}  // namespace

UnitaryRep::UnitaryRep(GroupDescriptor desc, std::vector<Eigen::MatrixXcd> generators)
    : desc_(std::move(desc)), dim_(0), gens_(std::move(generators)) {
  if (desc_.kind() != GroupKind::Cyclic) throw InvalidArgument("representations are supported on finite cyclic products");
  if (static_cast<int>(gens_.size()) != desc_.arity()) throw InvalidArgument("one matrix per generator required");
  dim_ = gens_.front().rows();
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    const auto& u = gens_[i];
    if (u.rows() != dim_ || u.cols() != dim_) throw InvalidArgument("generator matrices must be square of equal size");
    const auto id = Eigen::MatrixXcd::Identity(dim_, dim_);
    if ((u * u.adjoint() - id).cwiseAbs().maxCoeff() > kUnitaryTol) throw InvalidArgument("generator matrix is not unitary");
    if ((matrix_power(u, desc_.moduli()[i]) - id).cwiseAbs().maxCoeff() > 1e-9) {
      throw InvalidArgument("generator matrix order does not divide its modulus");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if ((u * gens_[j] - gens_[j] * u).cwiseAbs().maxCoeff() > 1e-9) throw InvalidArgument("generator matrices must commute");
    }
  }
}

UnitaryRep UnitaryRep::trivial(const GroupDescriptor& desc, Eigen::Index dim) {
  return UnitaryRep(desc, std::vector<Eigen::MatrixXcd>(desc.arity(), Eigen::MatrixXcd::Identity(dim, dim)));
}

UnitaryRep UnitaryRep::random(const GroupDescriptor& desc, Eigen::Index dim, Rng& rng) {
  Eigen::MatrixXcd z(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) z(r, c) = {uniform01(rng) - 0.5, uniform01(rng) - 0.5};
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  const Eigen::MatrixXcd q = qr.householderQ();
  std::vector<Eigen::MatrixXcd> gens;
  for (int i = 0; i < desc.arity(); ++i) {
    const int64_t m = desc.moduli()[i];
    Eigen::VectorXcd diag(dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
      // Bias toward the trivial character so fixed vectors occur often.
      const int64_t c = uniform01(rng) < 0.3 ? 0 : uniform_int(rng, 0, m - 1);
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(c) / static_cast<double>(m);
      diag[k] = std::polar(1.0, angle);
    }
    gens.push_back(q * diag.asDiagonal() * q.adjoint());
  }
  return UnitaryRep(desc, std::move(gens));
}

Eigen::MatrixXcd UnitaryRep::operator()(const GroupElement& g) const {
  if (!desc_.contains(g)) throw DescriptorMismatch("element outside " + desc_.to_string());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(dim_, dim_);
  for (int i = 0; i < desc_.arity(); ++i) out = out * matrix_power(gens_[i], g[i]);
  return out;
}

MatrixCoefficientMean matrix_coefficient_mean(const UnitaryRep& rep, const Eigen::VectorXcd& x,
                                              const Eigen::VectorXcd& y) {
  if (x.size() != rep.dim() || y.size() != rep.dim()) throw InvalidArgument("vector dimension mismatch");
  const auto& d = rep.descriptor();
  MatrixCoefficientMean out;

  // Route 1: average the matrix coefficients over the whole group.
  std::complex<double> sum = 0;
  const int64_t order = d.order();
  std::vector<int64_t> idx(d.arity(), 0);
  for (int64_t n = 0; n < order; ++n) {
    sum += x.dot(rep(GroupElement(idx)) * y);
    for (int i = d.arity() - 1; i >= 0; --i) {
      if (++idx[i] < d.moduli()[i]) break;
      idx[i] = 0;
    }
  }
  out.group_mean = sum / static_cast<double>(order);

  // Route 2: orthonormal basis of the common fixed space from the null space
  // of the stacked (U_i - I).
  const Eigen::Index n = rep.dim();
  Eigen::MatrixXcd stacked(n * d.arity(), n);
  const auto id = Eigen::MatrixXcd::Identity(n, n);
  for (int i = 0; i < d.arity(); ++i) {
    std::vector<int64_t> e(d.arity(), 0);
    e[i] = d.moduli()[i] > 1 ? 1 : 0;
    stacked.block(i * n, 0, n, n) = rep(GroupElement(e)) - id;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(stacked, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] > 1e-8) ++rank;
  }
  const Eigen::MatrixXcd basis = svd.matrixV().rightCols(n - rank);
  out.fixed_dim = n - rank;
  if (out.fixed_dim == 0) {
    out.projection_inner = 0;
  } else {
    out.projection_inner = (basis.adjoint() * x).dot(basis.adjoint() * y);
  }
  return out;
}

}  // namespace prodset
