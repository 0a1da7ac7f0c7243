#include "prodset/circle.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "prodset/error.hpp"

namespace prodset {

namespace {

using HighPrecision = boost::multiprecision::cpp_bin_float_50;

constexpr int64_t kLetterA = 1;
constexpr int64_t kLetterB = 2;

long double frac(long double x) { return x - std::floor(x); }

int64_t rotation_numerator(const CircleSystem& sys, int64_t n) {
  __int128 r = static_cast<__int128>(n) * sys.p % sys.q;
  if (r < 0) r += sys.q;
  return static_cast<int64_t>(r);
}

template <class T>
T ns_lift_generic(T x, T mu, T x_plus) {
  using std::atan;
  using std::floor;
  using std::tan;
  const T pi = boost::math::constants::pi<T>();
  const T s = x - x_plus;
  const T n = floor(s + T(0.5));
  const T y = s - n;
  if (y >= T(-0.25) && y <= T(0.25)) return x_plus + n + atan(mu * tan(pi * y)) / pi;
  // Near the repeller use atan(mu tan(pi y)) = sign(y) (pi/2 - atan(tan(pi z) / mu)), z = 1/2 - |y|.
  const T z = y > 0 ? T(0.5) - y : T(0.5) + y;
  const T half = T(0.5) - atan(tan(pi * z) / mu) / pi;
  return x_plus + n + (y > 0 ? half : -half);
}

/// Calls fn(letter, power) for maximal runs of equal letters, rightmost first.
template <class Fn>
void for_each_run(const GroupElement& g, Fn&& fn) {
  const auto w = g.payload();
  std::size_t i = w.size();
  while (i > 0) {
    const int64_t letter = w[i - 1];
    int64_t power = 0;
    while (i > 0 && w[i - 1] == letter) {
      ++power;
      --i;
    }
    const int64_t sign = letter > 0 ? 1 : -1;
    fn(std::abs(letter), sign * power);
  }
}

void require_rank_two(const GroupElement& g) {
  if (!free_rank_two().contains(g)) throw DescriptorMismatch("circle action needs a reduced word of F_2");
}

/// Derivative of the lift of the chart map t -> mu t.
long double ns_derivative(const CircleSystem& sys, long double x, long double mu) {
  const long double pi = boost::math::constants::pi<long double>();
  const long double y = x - sys.x_plus;
  const long double c = std::cos(pi * y), s = std::sin(pi * y);
  return mu / (c * c + mu * mu * s * s);
}

long double rounding_slack(long double x, long double derivative) {
  return 16 * LDBL_EPSILON * ((std::fabs(x) + 1) * (derivative + 1) + 1);
}

bool arc_inside(const Arc& x, const ArcUnion& open_u, long double margin) {
  if (open_u.is_full()) return x.length() < 1;
  for (const Arc& u : open_u.arcs()) {
    const long double start = u.l + frac(x.l - u.l);
    const long double end = start + x.length();
    if (start >= u.l + margin && end <= u.r - margin) return true;
  }
  return false;
}

GroupElement power_word(int64_t p, int64_t k, int64_t n) {
  std::vector<int64_t> w;
  w.insert(w.end(), static_cast<std::size_t>(std::abs(p)), p > 0 ? kLetterA : -kLetterA);
  w.insert(w.end(), static_cast<std::size_t>(std::abs(k)), k > 0 ? kLetterB : -kLetterB);
  w.insert(w.end(), static_cast<std::size_t>(std::abs(n)), n > 0 ? kLetterA : -kLetterA);
  return GroupElement(std::move(w));
}

std::string format_ld(long double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.21Lg", v);
  return buf;
}

}  // namespace

void CircleSystem::validate() const {
  if (q <= 0 || p < 0 || p >= q) throw InvalidArgument("rotation numerator must lie in [0, q)");
  if (std::gcd(p, q) != 1) throw InvalidArgument("rotation fraction must be reduced");
  if (!(lambda > 0 && lambda < 1)) throw InvalidArgument("contraction parameter must lie in (0, 1)");
  if (!(x_plus >= 0 && x_plus < 1)) throw InvalidArgument("attracting point must lie in [0, 1)");
}

long double CircleSystem::rotation(int64_t n) const {
  return static_cast<long double>(rotation_numerator(*this, n)) / static_cast<long double>(q);
}

const GroupDescriptor& free_rank_two() {
  static const GroupDescriptor desc = GroupDescriptor::free(2);
  return desc;
}

long double ns_lift(const CircleSystem& sys, long double x, int64_t k) {
  if (k == 0) return x;
  return ns_lift_generic<long double>(x, std::pow(sys.lambda, static_cast<long double>(k)), sys.x_plus);
}

long double act_lift(const CircleSystem& sys, const GroupElement& g, long double x) {
  require_rank_two(g);
  for_each_run(g, [&](int64_t letter, int64_t power) {
    if (letter == kLetterA) {
      x += sys.rotation(power);
    } else {
      x = ns_lift(sys, x, power);
    }
  });
  return x;
}

long double act(const CircleSystem& sys, const GroupElement& g, long double x) { return frac(act_lift(sys, g, x)); }

long double act_high_precision(const CircleSystem& sys, const GroupElement& g, long double x) {
  require_rank_two(g);
  HighPrecision v = x;
  const HighPrecision x_plus = sys.x_plus;
  const HighPrecision lambda = sys.lambda;
  for_each_run(g, [&](int64_t letter, int64_t power) {
    if (letter == kLetterA) {
      v += HighPrecision(rotation_numerator(sys, power)) / HighPrecision(sys.q);
    } else {
      v = ns_lift_generic<HighPrecision>(v, boost::multiprecision::pow(lambda, static_cast<int>(power)), x_plus);
    }
  });
  v -= boost::multiprecision::floor(v);
  return v.convert_to<long double>();
}

Interval act_interval(const CircleSystem& sys, const GroupElement& g, Interval x) {
  require_rank_two(g);
  const auto w = g.payload();
  for (std::size_t i = w.size(); i-- > 0;) {
    const int64_t letter = w[i];
    if (std::abs(letter) == kLetterA) {
      const long double shift = sys.rotation(letter > 0 ? 1 : -1);
      x.lo = x.lo + shift - rounding_slack(x.lo, 1);
      x.hi = x.hi + shift + rounding_slack(x.hi, 1);
    } else {
      const long double mu = letter > 0 ? sys.lambda : 1 / sys.lambda;
      const long double lo = ns_lift_generic<long double>(x.lo, mu, sys.x_plus);
      const long double hi = ns_lift_generic<long double>(x.hi, mu, sys.x_plus);
      x.lo = lo - rounding_slack(x.lo, ns_derivative(sys, x.lo, mu));
      x.hi = hi + rounding_slack(x.hi, ns_derivative(sys, x.hi, mu));
    }
  }
  return x;
}

ArcUnion ArcUnion::from_arcs(std::vector<Arc> arcs) {
  std::vector<Arc> pieces;
  for (const Arc& a : arcs) {
    const long double len = a.r - a.l;
    if (!(len >= 0)) throw InvalidArgument("arc with negative length");
    if (len >= 1) {
      ArcUnion u;
      u.arcs_ = {{0, 1}};
      u.full_ = true;
      return u;
    }
    const long double l = frac(a.l);
    const long double r = l + len;
    if (r <= 1) {
      pieces.push_back({l, r});
    } else {
      pieces.push_back({l, 1});
      pieces.push_back({0, r - 1});
    }
  }
  std::sort(pieces.begin(), pieces.end(), [](const Arc& x, const Arc& y) { return x.l < y.l || (x.l == y.l && x.r < y.r); });
  std::vector<Arc> merged;
  for (const Arc& a : pieces) {
    if (!merged.empty() && a.l <= merged.back().r) {
      merged.back().r = std::max(merged.back().r, a.r);
    } else {
      merged.push_back(a);
    }
  }
  ArcUnion u;
  if (merged.size() == 1 && merged[0].l <= 0 && merged[0].r >= 1) {
    u.arcs_ = {{0, 1}};
    u.full_ = true;
    return u;
  }
  if (merged.size() > 1 && merged.front().l <= 0 && merged.back().r >= 1) {
    merged.back().r = 1 + merged.front().r;
    merged.erase(merged.begin());
  }
  u.arcs_ = std::move(merged);
  return u;
}

ArcUnion ArcUnion::parse(std::string_view text) {
  std::vector<Arc> arcs;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ParseError("arc line " + std::to_string(lineno) + ": expected l,r");
    try {
      std::size_t used = 0;
      const long double l = std::stold(line.substr(0, comma), &used);
      const long double r = std::stold(line.substr(comma + 1));
      if (r < l) throw ParseError("arc line " + std::to_string(lineno) + ": r < l");
      arcs.push_back({l, r});
    } catch (const std::logic_error&) {
      throw ParseError("arc line " + std::to_string(lineno) + ": bad number");
    }
  }
  return from_arcs(std::move(arcs));
}

std::string ArcUnion::serialize() const {
  std::string out;
  for (const Arc& a : arcs_) out += format_ld(a.l) + "," + format_ld(a.r) + "\n";
  return out;
}

long double ArcUnion::length() const {
  if (full_) return 1;
  long double total = 0;
  for (const Arc& a : arcs_) total += a.length();
  return total;
}

ArcUnion ArcUnion::complement() const {
  if (full_) return empty();
  if (arcs_.empty()) return full();
  std::vector<Arc> gaps;
  for (std::size_t i = 0; i < arcs_.size(); ++i) {
    const long double next = i + 1 < arcs_.size() ? arcs_[i + 1].l : arcs_[0].l + 1;
    if (next > arcs_[i].r) gaps.push_back({arcs_[i].r, next});
  }
  return from_arcs(std::move(gaps));
}

ArcUnion ArcUnion::merge(const ArcUnion& other) const {
  std::vector<Arc> all = arcs_;
  all.insert(all.end(), other.arcs_.begin(), other.arcs_.end());
  return from_arcs(std::move(all));
}

Membership ArcUnion::membership(long double x, long double margin) const {
  if (full_) return Membership::In;
  bool unknown = false;
  for (const Arc& a : arcs_) {
    const long double d = frac(x - a.l);
    const long double len = a.length();
    if (d <= len) {
      if (d >= margin && len - d >= margin) return Membership::In;
      unknown = true;
    } else if (d - len < margin || d > 1 - margin) {
      unknown = true;
    }
  }
  return unknown ? Membership::Unknown : Membership::Out;
}

ArcUnion standard_arcs() {
  return ArcUnion::from_arcs({{0.1L, 0.105L}, {0.3L, 0.305L}, {0.6L, 0.605L}, {0.85L, 0.855L}});
}

ArcUnion act(const CircleSystem& sys, const GroupElement& g, const ArcUnion& s) {
  if (s.is_full() || s.is_empty()) return s;
  std::vector<Arc> out;
  for (const Arc& a : s.arcs()) out.push_back({act_lift(sys, g, a.l), act_lift(sys, g, a.r)});
  return ArcUnion::from_arcs(std::move(out));
}

ArcUnion act_outer(const CircleSystem& sys, const GroupElement& g, const ArcUnion& s) {
  if (s.is_full() || s.is_empty()) return s;
  std::vector<Arc> out;
  for (const Arc& a : s.arcs()) {
    const Interval l = act_interval(sys, g, {a.l, a.l});
    const Interval r = act_interval(sys, g, {a.r, a.r});
    out.push_back({l.lo, std::max(r.hi, l.lo)});
  }
  return ArcUnion::from_arcs(std::move(out));
}

ArcUnion act_outer(const CircleSystem& sys, const std::vector<GroupElement>& f, const ArcUnion& s) {
  std::vector<Arc> all;
  for (const auto& g : f) {
    const ArcUnion img = act_outer(sys, g, s);
    if (img.is_full()) return img;
    all.insert(all.end(), img.arcs().begin(), img.arcs().end());
  }
  return ArcUnion::from_arcs(std::move(all));
}

bool verify_inclusion(const CircleSystem& sys, const GroupElement& g, const ArcUnion& b, const ArcUnion& u_open,
                      long double margin) {
  if (b.is_empty()) return true;
  if (u_open.is_empty()) return false;
  const ArcUnion img = act_outer(sys, g, b);
  if (img.is_full()) return false;
  return std::all_of(img.arcs().begin(), img.arcs().end(),
                     [&](const Arc& x) { return arc_inside(x, u_open, margin); });
}

bool separated(const ArcUnion& x, const ArcUnion& y, long double margin) {
  if (x.is_empty() || y.is_empty()) return true;
  if (x.is_full() || y.is_full()) return false;
  const ArcUnion gaps = y.complement();
  return std::all_of(x.arcs().begin(), x.arcs().end(), [&](const Arc& a) { return arc_inside(a, gaps, margin); });
}

const char* to_string(WitnessStatus s) {
  switch (s) {
    case WitnessStatus::Found: return "found";
    case WitnessStatus::BudgetExhausted: return "budget-exhausted";
    case WitnessStatus::Covered: return "covered";
  }
  return "?";
}

Witness shrink_witness(const CircleSystem& sys, const ArcUnion& b, const ArcUnion& u_open, int max_length,
                       long double margin) {
  if (b.is_full()) throw InvalidArgument("shrink_witness: B is the whole circle");
  if (u_open.is_empty()) throw InvalidArgument("shrink_witness: U is empty");
  const auto& desc = free_rank_two();

  Witness w;
  w.g = desc.identity();
  ++w.candidates;
  if (verify_inclusion(sys, w.g, b, u_open, margin)) {
    w.status = WitnessStatus::Found;
    return w;
  }

  auto fast_inside = [&](const GroupElement& g) {
    const ArcUnion img = act(sys, g, b);
    if (img.is_full()) return false;
    return std::all_of(img.arcs().begin(), img.arcs().end(),
                       [&](const Arc& x) { return arc_inside(x, u_open, margin / 2); });
  };

  for (int len = 1; len <= max_length; ++len) {
    std::vector<GroupElement> words;
    words.push_back(power_word(len, 0, 0));
    words.push_back(power_word(-len, 0, 0));
    for (int64_t k = -len; k <= len; ++k) {
      if (k == 0) continue;
      const int64_t rest = len - std::abs(k);
      for (int64_t p = -rest; p <= rest; ++p) {
        const int64_t n = rest - std::abs(p);
        words.push_back(power_word(p, k, n));
        if (n != 0) words.push_back(power_word(p, k, -n));
      }
    }
    std::sort(words.begin(), words.end(), desc.comparator());
    for (const auto& g : words) {
      ++w.candidates;
      if (fast_inside(g) && verify_inclusion(sys, g, b, u_open, margin)) {
        w.status = WitnessStatus::Found;
        w.g = g;
        return w;
      }
    }
  }
  w.status = WitnessStatus::BudgetExhausted;
  w.detail = "no verified witness of length <= " + std::to_string(max_length);
  return w;
}

Witness disjointness_witness(const CircleSystem& sys, const std::vector<GroupElement>& f, const ArcUnion& a,
                             int max_length, long double margin) {
  const ArcUnion fa = act_outer(sys, f, a);
  const long double covered = fa.length();
  if (fa.is_full() || covered >= 1 - 2 * margin) {
    Witness w;
    w.status = WitnessStatus::Covered;
    w.covered_length = covered;
    w.detail = "F.A covers the circle at this resolution (total length " + format_ld(covered) + ")";
    return w;
  }
  Witness w = shrink_witness(sys, a, fa.complement(), max_length, margin);
  w.covered_length = covered;
  if (w.status == WitnessStatus::Found && !separated(act_outer(sys, w.g, a), fa, margin)) {
    throw Error("disjointness witness failed its separation check");
  }
  return w;
}

ReturnSet return_set(const CircleSystem& sys, const ArcUnion& a, long double x, int64_t r, long double margin) {
  Ball ball = enumerate_ball(free_rank_two(), r);
  std::vector<GroupElement> members, ambiguous;
  for (const auto& g : ball.elements()) {
    switch (a.membership(act(sys, g, x), margin)) {
      case Membership::In: members.push_back(g); break;
      case Membership::Unknown: ambiguous.push_back(g); break;
      case Membership::Out: break;
    }
  }
  const bool exact = ambiguous.empty();
  return ReturnSet{FiniteWindowSet(std::move(members), std::move(ball), exact), std::move(ambiguous)};
}

Refutation refute_syndeticity(const CircleSystem& sys, const std::vector<GroupElement>& f, const ArcUnion& a,
                              int max_length, long double margin) {
  Refutation out;
  const Witness w = disjointness_witness(sys, f, a, max_length, margin);
  out.status = w.status;
  out.detail = w.detail;
  if (w.status != WitnessStatus::Found) return out;
  Certificate cert{sys, a, f, w.g, margin};
  if (!verify_certificate(certificate_json(cert))) {
    out.status = WitnessStatus::BudgetExhausted;
    out.detail = "witness failed re-verification from its certificate";
    return out;
  }
  out.certificate = std::move(cert);
  return out;
}

nlohmann::json certificate_json(const Certificate& c) {
  const auto& desc = free_rank_two();
  nlohmann::json arcs = nlohmann::json::array();
  for (const Arc& a : c.arcs.arcs()) arcs.push_back({static_cast<double>(a.l), static_cast<double>(a.r)});
  nlohmann::json f = nlohmann::json::array();
  for (const auto& g : c.f) f.push_back(desc.format(g));
  return {
      {"alpha", {{"p", c.sys.p}, {"q", c.sys.q}}},
      {"lambda", static_cast<double>(c.sys.lambda)},
      {"x_plus", static_cast<double>(c.sys.x_plus)},
      {"arcs", arcs},
      {"F", f},
      {"g", desc.format(c.g)},
      {"delta", static_cast<double>(c.delta)},
  };
}

bool verify_certificate(const nlohmann::json& j) {
  const auto& desc = free_rank_two();
  CircleSystem sys;
  sys.p = j.at("alpha").at("p").get<int64_t>();
  sys.q = j.at("alpha").at("q").get<int64_t>();
  sys.lambda = j.at("lambda").get<double>();
  sys.x_plus = j.value("x_plus", 0.0);
  sys.validate();
  std::vector<Arc> arcs;
  for (const auto& a : j.at("arcs")) arcs.push_back({a.at(0).get<double>(), a.at(1).get<double>()});
  const ArcUnion set = ArcUnion::from_arcs(std::move(arcs));
  std::vector<GroupElement> f;
  for (const auto& w : j.at("F")) f.push_back(desc.parse_element(w.get<std::string>()));
  const GroupElement g = desc.parse_element(j.at("g").get<std::string>());
  const long double delta = j.at("delta").get<double>();
  if (delta < 0) return false;
  const ArcUnion fa = act_outer(sys, f, set);
  if (fa.is_full()) return false;
  return separated(act_outer(sys, g, set), fa, delta);
}

Rational max_orbit_gap(const CircleSystem& sys, int64_t n) {
  std::vector<int64_t> pts;
  pts.reserve(static_cast<std::size_t>(n) + 1);
  for (int64_t j = 0; j <= n; ++j) pts.push_back(rotation_numerator(sys, j));
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  int64_t gap = sys.q - pts.back() + pts.front();
  for (std::size_t i = 1; i < pts.size(); ++i) gap = std::max(gap, pts[i] - pts[i - 1]);
  return Rational(gap, sys.q);
}

int64_t ostrowski_bound(const CircleSystem& sys, double eps) {
  int64_t num = sys.p, den = sys.q;
  int64_t q_prev = 0, q_cur = 1;
  while (num != 0) {
    const int64_t a = den / num;
    const int64_t next = a * q_cur + q_prev;
    q_prev = q_cur;
    q_cur = next;
    den -= a * num;
    std::swap(num, den);
    if (to_double(max_orbit_gap(sys, q_cur)) <= eps) return q_cur;
  }
  return sys.q;
}

std::optional<int64_t> contraction_exponent(const CircleSystem& sys, const ArcUnion& b, const ArcUnion& u_open,
                                            int64_t n_max) {
  for (int64_t n = 0; n <= n_max; ++n) {
    if (verify_inclusion(sys, power_word(0, n, 0), b, u_open)) return n;
  }
  return std::nullopt;
}

bool check_north_south(const CircleSystem& sys, int points, long double tol) {
  long double prev = ns_lift(sys, 0, 1);
  for (int i = 1; i <= points; ++i) {
    const long double x = static_cast<long double>(i) / points;
    const long double y = ns_lift(sys, x, 1);
    if (!(y > prev)) return false;
    if (std::fabs(ns_lift(sys, x + 1, 1) - y - 1) > tol) return false;
    prev = y;
  }
  return std::fabs(ns_lift(sys, sys.x_plus, 1) - sys.x_plus) <= tol &&
         std::fabs(ns_lift(sys, sys.x_minus(), 1) - sys.x_minus()) <= tol;
}

}  // namespace prodset
