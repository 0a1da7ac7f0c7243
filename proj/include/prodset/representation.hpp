#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "prodset/group.hpp"
#include "prodset/rng.hpp"

namespace prodset {

/// Finite-dimensional unitary representation of a finite cyclic product,
/// given by the (commuting) unitary matrices of its generators.
class UnitaryRep {
 public:
  /// Throws InvalidArgument unless every generator matrix is unitary to
  /// 1e-10, has order dividing its modulus, and they commute.
  UnitaryRep(GroupDescriptor desc, std::vector<Eigen::MatrixXcd> generators);

  static UnitaryRep trivial(const GroupDescriptor& desc, Eigen::Index dim);
  /// Q diag(characters) Q^* with a random unitary Q and random characters.
  static UnitaryRep random(const GroupDescriptor& desc, Eigen::Index dim, Rng& rng);

  const GroupDescriptor& descriptor() const { return desc_; }
  Eigen::Index dim() const { return dim_; }
  Eigen::MatrixXcd operator()(const GroupElement& g) const;

 private:
  GroupDescriptor desc_;
  Eigen::Index dim_;
  std::vector<Eigen::MatrixXcd> gens_;
};

struct MatrixCoefficientMean {
  std::complex<double> group_mean;       // (1/|G|) sum_g <x, pi(g) y>
  std::complex<double> projection_inner;  // <P x, P y>, P onto the fixed space
  Eigen::Index fixed_dim = 0;
};

/// Inner products are conjugate-linear in the first argument.
MatrixCoefficientMean matrix_coefficient_mean(const UnitaryRep& rep, const Eigen::VectorXcd& x,
                                              const Eigen::VectorXcd& y);

}  // namespace prodset
