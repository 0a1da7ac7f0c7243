#pragma once

// F_2 acting on the circle R/Z: a rotates by alpha, b is a north-south map
// with attracting fixed point x_plus and repelling fixed point x_plus + 1/2.
// Words act right to left.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "prodset/group.hpp"
#include "prodset/rational.hpp"
#include "prodset/window_set.hpp"

namespace prodset {

inline constexpr long double kArcMargin = 1e-9L;

struct CircleSystem {
  int64_t p = 832040;  // alpha = p / q, a convergent of (sqrt 5 - 1) / 2
  int64_t q = 1346269;
  long double lambda = 0.5L;
  long double x_plus = 0.0L;

  static CircleSystem standard() { return {}; }
  void validate() const;

  long double alpha() const { return static_cast<long double>(p) / static_cast<long double>(q); }
  long double x_minus() const { return x_plus + 0.5L; }
  /// Fractional part of n * alpha, computed exactly before rounding.
  long double rotation(int64_t n) const;
};

const GroupDescriptor& free_rank_two();

/// Lift of T^k: the circle minus x_minus is charted by t = tan(pi (x - x_plus))
/// and T^k acts as t -> lambda^k t.
long double ns_lift(const CircleSystem& sys, long double x, int64_t k);

/// g . x on the lift (no reduction mod 1).
long double act_lift(const CircleSystem& sys, const GroupElement& g, long double x);
/// g . x in [0, 1).
long double act(const CircleSystem& sys, const GroupElement& g, long double x);
/// Same map evaluated with 50 significant digits, then rounded.
long double act_high_precision(const CircleSystem& sys, const GroupElement& g, long double x);

struct Interval {
  long double lo = 0, hi = 0;
};

/// Letter-by-letter outward-rounded image of an interval of lift values.
Interval act_interval(const CircleSystem& sys, const GroupElement& g, Interval x);

struct Arc {
  long double l = 0, r = 0;  // lift, 0 <= l < 1, l <= r <= l + 1
  long double length() const { return r - l; }
};

/// Finite union of closed arcs, kept disjoint and sorted by left endpoint.
/// A complement is again an ArcUnion whose arcs are read as open.
class ArcUnion {
 public:
  ArcUnion() = default;
  static ArcUnion from_arcs(std::vector<Arc> arcs);
  static ArcUnion full() { return from_arcs({{0, 1}}); }
  static ArcUnion empty() { return {}; }
  /// One "l,r" pair per line; blank lines and '#' comments are skipped.
  static ArcUnion parse(std::string_view text);
  std::string serialize() const;

  const std::vector<Arc>& arcs() const { return arcs_; }
  bool is_empty() const { return arcs_.empty(); }
  bool is_full() const { return full_; }
  long double length() const;

  ArcUnion complement() const;
  ArcUnion merge(const ArcUnion& other) const;
  /// In when x is inside an arc by at least `margin`, Unknown when within
  /// `margin` of an endpoint.
  Membership membership(long double x, long double margin = 0) const;

 private:
  std::vector<Arc> arcs_;
  bool full_ = false;
};

/// Four arcs of length 0.005 starting at 0.1, 0.3, 0.6 and 0.85.
ArcUnion standard_arcs();

/// Endpoint-wise image (monotone maps send arcs to arcs).
ArcUnion act(const CircleSystem& sys, const GroupElement& g, const ArcUnion& s);
/// Image enlarged to contain the exact image, from interval endpoints.
ArcUnion act_outer(const CircleSystem& sys, const GroupElement& g, const ArcUnion& s);
/// Union of g . S over g in F, outer approximation.
ArcUnion act_outer(const CircleSystem& sys, const std::vector<GroupElement>& f, const ArcUnion& s);

/// Every arc of the outer image of g . B lies inside an open arc of U with
/// `margin` to spare.
bool verify_inclusion(const CircleSystem& sys, const GroupElement& g, const ArcUnion& b, const ArcUnion& u_open,
                      long double margin = kArcMargin);
/// Closed arc unions at distance at least `margin`.
bool separated(const ArcUnion& x, const ArcUnion& y, long double margin = kArcMargin);

enum class WitnessStatus { Found, BudgetExhausted, Covered };
const char* to_string(WitnessStatus s);

struct Witness {
  WitnessStatus status = WitnessStatus::BudgetExhausted;
  GroupElement g;
  std::string detail;
  long double covered_length = 0;
  std::size_t candidates = 0;
};

/// Searches words a^p b^k a^n by reduced length (canonical order within a
/// length) for g with g . B inside U. U is read as open arcs. Each candidate
/// accepted by the fast evaluation is re-verified by interval arithmetic.
Witness shrink_witness(const CircleSystem& sys, const ArcUnion& b, const ArcUnion& u_open, int max_length,
                       long double margin = kArcMargin);

/// g with F.A and g.A separated. Reports Covered, naming the total length,
/// when F.A leaves no room at this resolution.
Witness disjointness_witness(const CircleSystem& sys, const std::vector<GroupElement>& f, const ArcUnion& a,
                             int max_length, long double margin = kArcMargin);

struct ReturnSet {
  FiniteWindowSet set;
  /// Words whose image lands within the margin of an endpoint of A.
  std::vector<GroupElement> ambiguous;
};

/// {g in Ball(r) : g . x in A}.
ReturnSet return_set(const CircleSystem& sys, const ArcUnion& a, long double x, int64_t r,
                     long double margin = kArcMargin);

struct Certificate {
  CircleSystem sys;
  ArcUnion arcs;
  std::vector<GroupElement> f;
  GroupElement g;
  long double delta = kArcMargin;
};

struct Refutation {
  WitnessStatus status = WitnessStatus::BudgetExhausted;
  std::optional<Certificate> certificate;
  std::string detail;
};

/// A verified g with F.A ∩ g.A empty, which shows that F A_x A_x^{-1} misses g.
Refutation refute_syndeticity(const CircleSystem& sys, const std::vector<GroupElement>& f, const ArcUnion& a,
                              int max_length, long double margin = kArcMargin);

/// {alpha: {p, q}, lambda, arcs, F, g, delta}.
nlohmann::json certificate_json(const Certificate& c);
/// Re-checks a certificate from its serialized form alone.
bool verify_certificate(const nlohmann::json& j);

/// Largest gap of {j alpha mod 1 : 0 <= j <= n}, exact.
Rational max_orbit_gap(const CircleSystem& sys, int64_t n);
/// Least continued-fraction denominator J of alpha whose orbit prefix of
/// length J is eps-dense.
int64_t ostrowski_bound(const CircleSystem& sys, double eps);

/// Least n <= n_max with T^n(B) inside the open arcs U, verified.
std::optional<int64_t> contraction_exponent(const CircleSystem& sys, const ArcUnion& b, const ArcUnion& u_open,
                                            int64_t n_max);

/// Strict monotonicity of the lift of T on a grid of `points`, the degree
/// one condition, and the two fixed points.
bool check_north_south(const CircleSystem& sys, int points, long double tol = 1e-12L);

}  // namespace prodset
