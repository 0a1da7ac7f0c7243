#include "prodset/bohr.hpp"

#include <cmath>

#include "prodset/error.hpp"

namespace prodset {

BohrSpec BohrSpec::one_dim(double theta, double center, double epsilon) {
  return BohrSpec{{{theta}}, {center}, epsilon};
}

void BohrSpec::validate(int lattice_dim) const {
  if (!(epsilon > 0.0 && epsilon <= 0.5)) throw InvalidArgument("Bohr radius must lie in (0, 1/2]");
  if (frequencies.empty() || frequencies.size() != center.size()) {
    throw InvalidArgument("Bohr spec needs one center coordinate per frequency row");
  }
  for (const auto& row : frequencies) {
    if (static_cast<int>(row.size()) != lattice_dim) throw DescriptorMismatch("Bohr frequency row has wrong length");
  }
}

double circle_distance(double x) {
  long double f = static_cast<long double>(x) - std::floor(static_cast<long double>(x));
  return static_cast<double>(std::min(f, 1.0L - f));
}

bool bohr_membership(const BohrSpec& spec, const GroupElement& g) {
  spec.validate(static_cast<int>(g.size()));
  for (std::size_t i = 0; i < spec.frequencies.size(); ++i) {
    long double phase = 0;
    for (std::size_t j = 0; j < g.size(); ++j) {
      long double t = static_cast<long double>(spec.frequencies[i][j]);
      long double prod = t * static_cast<long double>(g[j]);
      phase += prod - std::floor(prod);
    }
    if (circle_distance(static_cast<double>(phase - spec.center[i])) >= spec.epsilon) return false;
  }
  return true;
}

double piecewise_bohr_score(const FiniteWindowSet& c, const BohrSpec& spec, int64_t n, const Window& starts) {
  if (n < 1) throw InvalidArgument("probe length must be >= 1");
  const auto& d = c.descriptor();
  if (d.kind() != GroupKind::Lattice || d.arity() != 1) throw InvalidArgument("piecewise_bohr_score works on Z");
  double best = 0.0;
  for (const auto& t : starts.elements()) {
    std::size_t in_bohr = 0, in_both = 0;
    for (int64_t k = 0; k < n; ++k) {
      GroupElement x(std::vector<int64_t>{t[0] + k});
      if (!bohr_membership(spec, x)) continue;
      ++in_bohr;
      if (c.membership(x) == Membership::In) ++in_both;
    }
    best = std::max(best, static_cast<double>(in_both) / static_cast<double>(std::max<std::size_t>(1, in_bohr)));
  }
  return best;
}

}  // namespace prodset
