#pragma once

#include <vector>

#include "prodset/window_set.hpp"

namespace prodset {

/// Bohr neighbourhood {g in Z^d : max_i ||(Theta g)_i - c_i|| < eps} where
/// Theta is a d' x d frequency matrix and ||.|| is distance to the nearest
/// integer.
struct BohrSpec {
  std::vector<std::vector<double>> frequencies;  // rows: torus coordinates
  std::vector<double> center;
  double epsilon = 0.05;

  static BohrSpec one_dim(double theta, double center, double epsilon);
  void validate(int lattice_dim) const;
};

double circle_distance(double x);

bool bohr_membership(const BohrSpec& spec, const GroupElement& g);

/// max over t in `starts` of |C ∩ B ∩ [t, t+n)| / max(1, |B ∩ [t, t+n)|).
double piecewise_bohr_score(const FiniteWindowSet& c, const BohrSpec& spec, int64_t n, const Window& starts);

}  // namespace prodset
