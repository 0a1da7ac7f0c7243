#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "prodset/circle.hpp"
#include "prodset/density.hpp"
#include "prodset/error.hpp"
#include "prodset/rng.hpp"

using namespace prodset;

namespace {

const CircleSystem kSys = CircleSystem::standard();
const GroupDescriptor& kF2 = free_rank_two();

GroupElement w(std::string_view s) { return kF2.word(s); }

long double circ_dist(long double x, long double y) {
  long double d = std::fmod(std::fabs(x - y), 1.0L);
  return std::min(d, 1 - d);
}

GroupElement random_word(Rng& rng, int max_len) {
  std::vector<int64_t> letters(static_cast<std::size_t>(uniform_int(rng, 0, max_len)));
  for (auto& x : letters) x = (uniform_int(rng, 0, 1) ? 1 : -1) * uniform_int(rng, 1, 2);
  return GroupElement(free_reduce(letters));
}

std::vector<GroupElement> ball_words(int r) {
  const Ball b = enumerate_ball(kF2, r);
  return b.elements();
}

}  // namespace

TEST(CircleAct, Examples) {
  EXPECT_EQ(act(kSys, kF2.identity(), 0.37L), 0.37L);
  EXPECT_NEAR(static_cast<double>(act(kSys, w("a"), 0.25L)), std::fmod(0.25 + 832040.0 / 1346269.0, 1.0), 1e-15);
  const ArcUnion s = standard_arcs();
  const ArcUnion back = act(kSys, kF2.mul(w("A"), w("a")), s);
  ASSERT_EQ(back.arcs().size(), s.arcs().size());
  for (std::size_t i = 0; i < s.arcs().size(); ++i) {
    EXPECT_NEAR(static_cast<double>(back.arcs()[i].l), static_cast<double>(s.arcs()[i].l), 1e-15);
    EXPECT_NEAR(static_cast<double>(back.arcs()[i].r), static_cast<double>(s.arcs()[i].r), 1e-15);
  }
}

TEST(CircleAct, WordsActRightToLeft) {
  const long double x = 0.1L;
  EXPECT_NEAR(static_cast<double>(act(kSys, w("ab"), x)), static_cast<double>(act(kSys, w("a"), act(kSys, w("b"), x))),
              1e-15);
}

TEST(CircleSystem, Validation) {
  kSys.validate();
  EXPECT_NEAR(static_cast<double>(kSys.alpha()), (std::sqrt(5.0) - 1) / 2, 1e-12);
  EXPECT_GE(kSys.q, 1'000'000);
  CircleSystem bad = kSys;
  bad.lambda = 1.5L;
  EXPECT_THROW(bad.validate(), InvalidArgument);
  bad = kSys;
  bad.q = 0;
  EXPECT_THROW(bad.validate(), InvalidArgument);
}

TEST(CircleSystem, NorthSouthMap) {
  EXPECT_TRUE(check_north_south(kSys, 10'000));
  EXPECT_NEAR(static_cast<double>(act(kSys, w("b"), kSys.x_plus)), 0.0, 1e-18);
  EXPECT_NEAR(static_cast<double>(act(kSys, w("b"), kSys.x_minus())), 0.5, 1e-15);
  const long double y = act(kSys, w("bbbbbbbbbb"), 0.45L);
  EXPECT_LT(circ_dist(y, kSys.x_plus), 0.01L);
}

TEST(CircleSystem, HomeomorphismSanity) {
  Rng rng = make_rng(31, 5, 0);
  for (int t = 0; t < 1000; ++t) {
    const GroupElement g = random_word(rng, 6);
    const long double x = static_cast<long double>(uniform01(rng));
    const long double y = act(kSys, kF2.inv(g), act(kSys, g, x));
    ASSERT_LT(circ_dist(x, y), 1e-9L) << kF2.format(g) << " at " << static_cast<double>(x);
  }
}

TEST(CircleSystem, HighPrecisionAgrees) {
  Rng rng = make_rng(32, 5, 0);
  for (int t = 0; t < 300; ++t) {
    const GroupElement g = random_word(rng, 8);
    const long double x = static_cast<long double>(uniform01(rng));
    ASSERT_LT(circ_dist(act(kSys, g, x), act_high_precision(kSys, g, x)), 1e-12L);
    const Interval iv = act_interval(kSys, g, {x, x});
    const long double hp = act_high_precision(kSys, g, x);
    const long double lifted = iv.lo + std::fmod(hp - std::fmod(iv.lo, 1.0L) + 2.0L, 1.0L);
    ASSERT_LE(iv.lo, lifted + 1e-18L);
    ASSERT_LT(circ_dist(lifted, hp), 1e-15L);
  }
}

TEST(CircleSystem, RotationDensity) {
  const int64_t j = ostrowski_bound(kSys, 1e-3);
  EXPECT_LE(max_orbit_gap(kSys, j), Rational(1, 1000));
  EXPECT_GT(max_orbit_gap(kSys, j / 2), Rational(1, 1000));
  EXPECT_EQ(kSys.rotation(kSys.q), 0.0L);
}

TEST(CircleSystem, Contraction) {
  const auto b = ArcUnion::from_arcs({{0.3L, 0.45L}});
  const auto u = ArcUnion::from_arcs({{0.99L, 1.01L}});
  const auto n = contraction_exponent(kSys, b, u, 60);
  ASSERT_TRUE(n.has_value());
  EXPECT_TRUE(verify_inclusion(kSys, GroupElement(std::vector<int64_t>(static_cast<std::size_t>(*n), 2)), b, u));
  if (*n > 1) {
    EXPECT_FALSE(verify_inclusion(kSys, GroupElement(std::vector<int64_t>(static_cast<std::size_t>(*n - 1), 2)), b, u));
  }
}

TEST(ArcUnion, NormalizationAndComplement) {
  const auto s = ArcUnion::from_arcs({{0.5L, 0.6L}, {0.55L, 0.7L}, {0.9L, 1.05L}});
  ASSERT_EQ(s.arcs().size(), 2u);
  EXPECT_NEAR(static_cast<double>(s.length()), 0.35, 1e-15);
  EXPECT_NEAR(static_cast<double>(s.complement().length()), 0.65, 1e-15);
  EXPECT_EQ(s.membership(0.58L), Membership::In);
  EXPECT_EQ(s.membership(0.02L), Membership::In);
  EXPECT_EQ(s.membership(0.8L), Membership::Out);
  EXPECT_EQ(s.membership(0.7L, 1e-9L), Membership::Unknown);
  EXPECT_TRUE(ArcUnion::full().complement().is_empty());
  EXPECT_TRUE(ArcUnion::empty().complement().is_full());
  const auto parsed = ArcUnion::parse("# fixture\n0.1,0.105\n\n0.3,0.305\n");
  EXPECT_EQ(parsed.arcs().size(), 2u);
  const auto again = ArcUnion::parse(parsed.serialize());
  EXPECT_EQ(again.arcs()[1].l, parsed.arcs()[1].l);
  EXPECT_THROW(ArcUnion::parse("0.1;0.2\n"), ParseError);
}

TEST(ShrinkWitness, Examples) {
  const auto b = ArcUnion::from_arcs({{0.2L, 0.25L}});
  const auto u = ArcUnion::from_arcs({{0.1L, 0.3L}});
  const auto e = shrink_witness(kSys, b, u, 10);
  ASSERT_EQ(e.status, WitnessStatus::Found);
  EXPECT_EQ(e.g, kF2.identity());

  const auto b2 = ArcUnion::from_arcs({{0.4L, 0.45L}});
  const auto u2 = ArcUnion::from_arcs({{0.99L, 1.01L}});
  const auto r = shrink_witness(kSys, b2, u2, 40);
  ASSERT_EQ(r.status, WitnessStatus::Found);
  EXPECT_TRUE(verify_inclusion(kSys, r.g, b2, u2));
  EXPECT_EQ(kF2.format(r.g), "bbba");
  const auto pure = contraction_exponent(kSys, b2, u2, 40);
  ASSERT_TRUE(pure.has_value());
  EXPECT_TRUE(verify_inclusion(kSys, GroupElement(std::vector<int64_t>(static_cast<std::size_t>(*pure), 2)), b2, u2));

  EXPECT_THROW(shrink_witness(kSys, ArcUnion::full(), u2, 10), InvalidArgument);
  EXPECT_THROW(shrink_witness(kSys, b2, ArcUnion::empty(), 10), InvalidArgument);
}

TEST(ShrinkWitness, SeededGenericArcs) {
  Rng rng = make_rng(33, 5, 0);
  int found = 0;
  for (int t = 0; t < 100; ++t) {
    const long double bl = uniform01(rng), blen = 0.01 + 0.2 * uniform01(rng);
    const long double ul = uniform01(rng), ulen = 0.005 + 0.05 * uniform01(rng);
    const auto b = ArcUnion::from_arcs({{bl, bl + blen}});
    const auto u = ArcUnion::from_arcs({{ul, ul + ulen}});
    const auto r = shrink_witness(kSys, b, u, 40);
    if (r.status == WitnessStatus::Found) {
      ++found;
      ASSERT_LE(kF2.length(r.g), 40);
      ASSERT_TRUE(verify_inclusion(kSys, r.g, b, u));
    }
  }
  EXPECT_GE(found, 95);
}

TEST(DisjointnessWitness, Examples) {
  const auto small = ArcUnion::from_arcs({{0.1L, 0.11L}});
  const auto r = disjointness_witness(kSys, {kF2.identity()}, small, 20);
  ASSERT_EQ(r.status, WitnessStatus::Found);
  EXPECT_TRUE(separated(small, act_outer(kSys, r.g, small)));

  const auto ball1 = ball_words(1);
  const auto r1 = disjointness_witness(kSys, ball1, standard_arcs(), 60);
  ASSERT_EQ(r1.status, WitnessStatus::Found);
  EXPECT_TRUE(separated(act_outer(kSys, ball1, standard_arcs()), act_outer(kSys, r1.g, standard_arcs())));

  const auto fat = ArcUnion::from_arcs({{0.0L, 0.3L}, {0.5L, 0.8L}});
  const auto c = disjointness_witness(kSys, ball1, fat, 20);
  EXPECT_EQ(c.status, WitnessStatus::Covered);
  EXPECT_NE(c.detail.find("covers the circle"), std::string::npos);
}

TEST(ReturnSet, Examples) {
  const auto full = return_set(kSys, ArcUnion::full(), 0.37L, 3);
  EXPECT_EQ(full.set.size(), 53u);
  EXPECT_TRUE(full.ambiguous.empty());
  const auto none = return_set(kSys, ArcUnion::empty(), 0.37L, 3);
  EXPECT_EQ(none.set.size(), 0u);

  const auto a = ArcUnion::from_arcs({{0.0L, 0.3L}});
  const auto r = return_set(kSys, a, 0.0L, 3);
  EXPECT_EQ(r.set.size(), 12u);
  EXPECT_EQ(r.ambiguous.size(), 7u);
  const Ball b3 = enumerate_ball(kF2, 3);
  for (const auto& g : b3.elements()) {
    if (std::find(r.ambiguous.begin(), r.ambiguous.end(), g) != r.ambiguous.end()) continue;
    const bool hp_in = a.membership(act_high_precision(kSys, g, 0.0L), kArcMargin) == Membership::In;
    ASSERT_EQ(r.set.has(g), hp_in) << kF2.format(g);
  }
}

TEST(Refutation, BallCertificates) {
  for (int rho = 0; rho <= 2; ++rho) {
    const auto ref = refute_syndeticity(kSys, ball_words(rho), standard_arcs(), 60);
    ASSERT_EQ(ref.status, WitnessStatus::Found) << rho << ": " << ref.detail;
    ASSERT_TRUE(ref.certificate.has_value());
    const auto j = certificate_json(*ref.certificate);
    EXPECT_TRUE(verify_certificate(nlohmann::json::parse(j.dump())));
    EXPECT_LE(kF2.length(ref.certificate->g), 60);
  }
}

TEST(Refutation, CoveredHasNoCertificate) {
  const auto fat = ArcUnion::from_arcs({{0.0L, 0.3L}, {0.5L, 0.8L}});
  const auto ref = refute_syndeticity(kSys, ball_words(1), fat, 20);
  EXPECT_EQ(ref.status, WitnessStatus::Covered);
  EXPECT_FALSE(ref.certificate.has_value());
}

TEST(Refutation, TamperedCertificateFails) {
  const auto ref = refute_syndeticity(kSys, ball_words(1), standard_arcs(), 60);
  ASSERT_TRUE(ref.certificate.has_value());
  auto j = certificate_json(*ref.certificate);
  j["g"] = "e";
  EXPECT_FALSE(verify_certificate(j));
  auto k = certificate_json(*ref.certificate);
  k["arcs"] = nlohmann::json::array({nlohmann::json::array({0.0, 0.6})});
  EXPECT_FALSE(verify_certificate(k));
}

TEST(ReturnSet, CesaroProfileStaysLarge) {
  const auto a = standard_arcs();
  const long double x = 0.37L;
  auto in_ax = [&](const GroupElement& g) { return a.membership(act(kSys, g, x)) == Membership::In; };
  const auto profile =
      monte_carlo_cesaro_profile(SparseMeasure::simple_random_walk(kF2), in_ax, 30, 20'000, 7);
  ASSERT_EQ(profile.size(), 30u);
  double running_max = 0;
  for (double v : profile) {
    running_max = std::max(running_max, v);
    EXPECT_GE(v, 0.5 * running_max);
  }
  EXPECT_GT(running_max, 0.0);
}
