#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "prodset/bohr.hpp"
#include "prodset/error.hpp"
#include "prodset/periodic.hpp"
#include "prodset/rng.hpp"
#include "prodset/structure.hpp"
#include "prodset/window_set.hpp"

using namespace prodset;

namespace {

const GroupDescriptor kZ = GroupDescriptor::lattice(1);
const GroupDescriptor kF2 = GroupDescriptor::free(2);
const GroupDescriptor kF3 = GroupDescriptor::free(3);

FiniteWindowSet ints(std::vector<int64_t> xs) {
  std::vector<GroupElement> els;
  for (int64_t x : xs) els.push_back(kZ.integer(x));
  return FiniteWindowSet::finite_set(kZ, std::move(els));
}

FiniteWindowSet words(const GroupDescriptor& d, std::vector<std::string> ws) {
  std::vector<GroupElement> els;
  for (const auto& w : ws) els.push_back(d.parse_element(w));
  return FiniteWindowSet::finite_set(d, std::move(els));
}

std::vector<int64_t> as_ints(const FiniteWindowSet& s) {
  std::vector<int64_t> out;
  for (const auto& g : s.elements()) out.push_back(g[0]);
  return out;
}

std::vector<std::string> as_words(const FiniteWindowSet& s) {
  std::vector<std::string> out;
  for (const auto& g : s.elements()) out.push_back(s.descriptor().format(g));
  return out;
}

PeriodicIntSet random_periodic(Rng& rng, int64_t max_modulus, bool nonempty) {
  const int64_t m = uniform_int(rng, 1, max_modulus);
  std::vector<int64_t> r;
  for (int64_t x = 0; x < m; ++x) {
    if (uniform_int(rng, 0, 1)) r.push_back(x);
  }
  if (nonempty && r.empty()) r.push_back(uniform_int(rng, 0, m - 1));
  return PeriodicIntSet(m, r);
}

}  // namespace

TEST(ProductSet, Examples) {
  const Ball out = enumerate_ball(kZ, 10);
  const auto s = product_set(ints({0, 2}), ints({0, 1}), out);
  EXPECT_EQ(as_ints(s), (std::vector<int64_t>{0, 1, 2, 3}));
  EXPECT_TRUE(s.exact());

  const auto f = product_set(words(kF2, {"a"}), words(kF2, {"A", "b"}), enumerate_ball(kF2, 4));
  EXPECT_EQ(as_words(f), (std::vector<std::string>{"e", "ab"}));
}

TEST(ProductSet, DescriptorMismatch) {
  EXPECT_THROW(product_set(ints({0}), words(kF2, {"a"}), enumerate_ball(kZ, 2)), DescriptorMismatch);
}

TEST(ProductSet, TruncationIsFlagged) {
  const Ball w3 = enumerate_ball(kF2, 3);
  const auto a = words_beginning_with(w3, {1, -1});
  const auto s = product_set(a, a, w3);
  EXPECT_FALSE(s.exact());
}

TEST(DifferenceSet, Examples) {
  const auto d1 = difference_set(words(kF2, {"a", "b"}), enumerate_ball(kF2, 4));
  EXPECT_EQ(as_words(d1), (std::vector<std::string>{"e", "aB", "bA"}));
  const auto d2 = difference_set(ints({0, 1, 3}), enumerate_ball(kZ, 10));
  EXPECT_EQ(as_ints(d2), (std::vector<int64_t>{-3, -2, -1, 0, 1, 2, 3}));
  const auto d3 = difference_set(words(kF2, {"e"}), enumerate_ball(kF2, 2));
  EXPECT_EQ(as_words(d3), (std::vector<std::string>{"e"}));
}

TEST(Periodic, ProductExamples) {
  EXPECT_TRUE(periodic_product(PeriodicIntSet(2, {0}), PeriodicIntSet(3, {0})).is_all());
  EXPECT_EQ(periodic_product(PeriodicIntSet(2, {0}), PeriodicIntSet(3, {0})).modulus(), 6);
  EXPECT_EQ(periodic_product(PeriodicIntSet(3, {0}), PeriodicIntSet(3, {0, 1})), PeriodicIntSet(3, {0, 1}));
  EXPECT_TRUE(periodic_product(PeriodicIntSet(5, {0}), PeriodicIntSet(5, {0, 1, 2, 3, 4})).is_all());
  EXPECT_TRUE(periodic_product(PeriodicIntSet(7, {3}), PeriodicIntSet::integers()).is_all());
}

TEST(Periodic, ProductMatchesBruteForce) {
  Rng rng = make_rng(11, 2, 0);
  for (int t = 0; t < 300; ++t) {
    const auto a = random_periodic(rng, 12, false), b = random_periodic(rng, 12, false);
    const auto s = periodic_product(a, b);
    const int64_t l = std::lcm(a.modulus(), b.modulus());
    std::vector<char> hit(static_cast<std::size_t>(l), 0);
    for (int64_t x = 0; x < l; ++x) {
      for (int64_t y = 0; y < l; ++y) {
        if (a.contains(x) && b.contains(y)) hit[(x + y) % l] = 1;
      }
    }
    for (int64_t r = 0; r < l; ++r) ASSERT_EQ(s.contains(r), hit[r] != 0);
  }
}

TEST(Periodic, ParseAndNormalize) {
  const auto p = PeriodicIntSet::parse("mod=6;residues=0,2,4");
  EXPECT_EQ(p.normalized().modulus(), 2);
  EXPECT_EQ(p.density(), Rational(1, 2));
  EXPECT_EQ(PeriodicIntSet::parse(p.to_string()), p);
  EXPECT_THROW(PeriodicIntSet::parse("mod=0;residues=0"), ParseError);
  EXPECT_THROW(PeriodicIntSet::parse("residues=1"), ParseError);
  EXPECT_THROW(PeriodicIntSet::parse("mod=4;residues=x"), ParseError);
}

TEST(Thick, Examples) {
  EXPECT_EQ(is_right_thick(PeriodicIntSet(2, {0})).outcome, Outcome::Refuted);
  EXPECT_EQ(is_right_thick(PeriodicIntSet(3, {0, 1, 2})).outcome, Outcome::Witnessed);

  std::vector<GroupElement> t;
  for (int64_t x = 40; x < 60; ++x) t.push_back(kZ.integer(x));
  const FiniteWindowSet T(t, lattice_box(kZ, 0, 100));
  const auto r = is_right_thick(T, lattice_box(kZ, 0, 10), lattice_box(kZ, 0, 100));
  ASSERT_EQ(r.outcome, Outcome::Witnessed);
  EXPECT_EQ(*r.witness, kZ.integer(40));

  const auto none = is_right_thick(T, lattice_box(kZ, 0, 30), lattice_box(kZ, 0, 100));
  EXPECT_EQ(none.outcome, Outcome::Undetermined);
  EXPECT_TRUE(none.bounded_search);
}

TEST(Index, PeriodicExamples) {
  const auto r = syndeticity_index(PeriodicIntSet(3, {0}));
  EXPECT_EQ(r.outcome, Outcome::Witnessed);
  ASSERT_TRUE(r.index);
  EXPECT_EQ(*r.index, 3u);
  EXPECT_TRUE(r.minimal());
  EXPECT_EQ(r.cover, (std::vector<GroupElement>{kZ.integer(0), kZ.integer(1), kZ.integer(2)}));

  const auto all = syndeticity_index(PeriodicIntSet::integers());
  ASSERT_TRUE(all.index);
  EXPECT_EQ(*all.index, 1u);
  EXPECT_EQ(all.cover, (std::vector<GroupElement>{kZ.integer(0)}));

  EXPECT_EQ(syndeticity_index(PeriodicIntSet::empty(4)).outcome, Outcome::Refuted);
  EXPECT_THROW(syndeticity_index(PeriodicIntSet(3, {0}), IndexOptions{0, 10}), InvalidArgument);
}

TEST(Index, FreeGroupFirstLetterSet) {
  const auto c = words_beginning_with(enumerate_ball(kF2, 5), {1, -1});
  const Ball target = enumerate_ball(kF2, 4);
  const auto r = syndeticity_index(c, target, enumerate_ball(kF2, 1));
  ASSERT_TRUE(r.index);
  EXPECT_LE(*r.index, 3u);
  const auto fc = product_set(FiniteWindowSet::finite_set(kF2, r.cover), c, target);
  EXPECT_EQ(fc.size(), target.size());
  const auto named = product_set(words(kF2, {"e", "a", "A"}), c, target);
  EXPECT_EQ(named.size(), target.size());
}

TEST(Index, WindowedAgreesWithPeriodic) {
  Rng rng = make_rng(5, 2, 1);
  for (int t = 0; t < 40; ++t) {
    const auto p = random_periodic(rng, 8, true);
    const int64_t m = p.normalized().modulus();
    std::vector<GroupElement> els;
    for (int64_t x = -60; x <= 60; ++x) {
      if (p.contains(x)) els.push_back(kZ.integer(x));
    }
    const FiniteWindowSet c(els, enumerate_ball(kZ, 60));
    const auto exact = syndeticity_index(p);
    const auto windowed = syndeticity_index(c, lattice_box(kZ, 0, m), lattice_box(kZ, 0, m));
    ASSERT_TRUE(exact.index && windowed.index);
    EXPECT_EQ(*exact.index, *windowed.index) << p.to_string();
  }
}

TEST(PiecewiseSyndetic, Examples) {
  const auto evens = is_piecewise_syndetic(PeriodicIntSet(2, {0}));
  EXPECT_EQ(evens.outcome, Outcome::Witnessed);
  EXPECT_EQ(evens.f, (std::vector<GroupElement>{kZ.integer(0), kZ.integer(1)}));

  const auto two = is_piecewise_syndetic(PeriodicIntSet(4, {0, 1}));
  EXPECT_EQ(two.outcome, Outcome::Witnessed);
  EXPECT_EQ(two.f, (std::vector<GroupElement>{kZ.integer(0), kZ.integer(2)}));

  std::vector<GroupElement> squares;
  for (int64_t n = 0; n <= 20; ++n) squares.push_back(kZ.integer(n * n));
  const FiniteWindowSet sq(squares, lattice_box(kZ, 0, 401));
  const auto r = is_piecewise_syndetic(sq, enumerate_ball(kZ, 20), lattice_box(kZ, 0, 10), lattice_box(kZ, 0, 401),
                                       PWOptions{2, 1'000'000});
  EXPECT_NE(r.outcome, Outcome::Witnessed);
  EXPECT_TRUE(r.bounded_search);
}

TEST(Bohr, Examples) {
  const double theta = (std::sqrt(5.0) - 1) / 2;
  const auto spec = BohrSpec::one_dim(theta, 0, 0.05);
  EXPECT_TRUE(bohr_membership(spec, kZ.integer(0)));
  EXPECT_TRUE(bohr_membership(spec, kZ.integer(13)));
  EXPECT_FALSE(bohr_membership(spec, kZ.integer(2)));
  EXPECT_NEAR(circle_distance(13 * theta), 0.0344418537, 1e-9);
  EXPECT_NEAR(circle_distance(2 * theta), 0.2360679775, 1e-9);
  EXPECT_THROW(BohrSpec::one_dim(theta, 0, 0.7).validate(1), InvalidArgument);
}

TEST(Bohr, PiecewiseScore) {
  const auto spec = BohrSpec::one_dim((std::sqrt(5.0) - 1) / 2, 0, 0.1);
  const Window w = lattice_box(kZ, -50, 300);
  const Window starts = lattice_box(kZ, 0, 200);
  const auto all = FiniteWindowSet::from_predicate(w, [](const GroupElement&) { return true; });
  const auto none = FiniteWindowSet::from_predicate(w, [](const GroupElement&) { return false; });
  const auto own = FiniteWindowSet::from_predicate(w, [&](const GroupElement& g) { return bohr_membership(spec, g); });
  EXPECT_DOUBLE_EQ(piecewise_bohr_score(all, spec, 40, starts), 1.0);
  EXPECT_DOUBLE_EQ(piecewise_bohr_score(none, spec, 40, starts), 0.0);
  EXPECT_DOUBLE_EQ(piecewise_bohr_score(own, spec, 40, starts), 1.0);
}

TEST(SetProperties, SumsetSymmetry) {
  Rng rng = make_rng(3, 2, 2);
  const Ball out = enumerate_ball(kZ, 40);
  for (int t = 0; t < 200; ++t) {
    std::vector<int64_t> a, b;
    for (int i = 0; i < 6; ++i) {
      a.push_back(uniform_int(rng, -15, 15));
      b.push_back(uniform_int(rng, -15, 15));
    }
    ASSERT_EQ(as_ints(product_set(ints(a), ints(b), out)), as_ints(product_set(ints(b), ints(a), out)));
  }
}

TEST(SetProperties, DifferenceSetSymmetricWithIdentity) {
  Rng rng = make_rng(4, 2, 3);
  const Ball b3 = enumerate_ball(kF2, 3);
  const Ball out = enumerate_ball(kF2, 6);
  for (int t = 0; t < 100; ++t) {
    std::vector<GroupElement> els;
    for (int i = 0; i < 8; ++i) els.push_back(b3.elements()[uniform_int(rng, 0, b3.size() - 1)]);
    const auto d = difference_set(FiniteWindowSet::finite_set(kF2, els), out);
    ASSERT_TRUE(d.exact());
    ASSERT_TRUE(d.has(kF2.identity()));
    for (const auto& g : d.elements()) ASSERT_TRUE(d.has(kF2.inv(g)));
  }
}

TEST(SetProperties, ThreeGeneratorIdentity) {
  const Ball w = enumerate_ball(kF3, 5);
  const Ball out = enumerate_ball(kF3, 3);
  const auto a = difference_set(words_beginning_with(w, {1}), out);
  const auto b = difference_set(words_beginning_with(w, {2}), out);
  const auto c = difference_set(words_beginning_with(w, {3}), out);
  const auto abc = intersect(intersect(a, b), c);
  EXPECT_EQ(as_words(abc), (std::vector<std::string>{"e"}));
  EXPECT_GT(a.size(), 1u);
}

TEST(SetProperties, ParadoxicalFirstLetterSet) {
  const Ball w = enumerate_ball(kF2, 7);
  const auto a = words_beginning_with(w, {1, -1});
  const auto f = words(kF2, {"e", "a", "A"});
  for (int r = 0; r <= 6; ++r) {
    const Ball target = enumerate_ball(kF2, r);
    EXPECT_EQ(product_set(f, a, target).size(), target.size()) << "r=" << r;
  }
  const Ball b6 = enumerate_ball(kF2, 6);
  std::vector<FiniteWindowSet> translates;
  for (int m = 1; m <= 5; ++m) {
    translates.push_back(product_set(words(kF2, {std::string(m, 'b')}), a, b6));
    EXPECT_GT(translates.back().size(), 0u);
  }
  for (std::size_t i = 0; i < translates.size(); ++i) {
    for (std::size_t j = i + 1; j < translates.size(); ++j) {
      EXPECT_EQ(intersect(translates[i], translates[j]).size(), 0u) << i + 1 << " vs " << j + 1;
    }
  }
}

TEST(SetProperties, SyndeticIffComplementNotThick) {
  Rng rng = make_rng(6, 2, 4);
  for (int t = 0; t < 500; ++t) {
    const auto p = random_periodic(rng, 12, false);
    const bool syndetic = syndeticity_index(p).outcome == Outcome::Witnessed;
    const bool comp_thick = is_right_thick(p.complement()).outcome == Outcome::Witnessed;
    ASSERT_EQ(syndetic, !comp_thick) << p.to_string();
  }
}

TEST(SetProperties, Pigeonhole) {
  Rng rng = make_rng(7, 2, 5);
  int checked = 0;
  while (checked < 300) {
    const auto a = random_periodic(rng, 12, true), b = random_periodic(rng, 12, true);
    if (a.density() + b.density() <= Rational(1)) continue;
    ++checked;
    ASSERT_TRUE(periodic_product(a, b).is_all()) << a.to_string() << " + " << b.to_string();
  }
}

TEST(SetProperties, TranslatesExhaust) {
  Rng rng = make_rng(8, 2, 6);
  for (int t = 0; t < 200; ++t) {
    const auto a = random_periodic(rng, 16, true);
    Rational prev(0);
    std::vector<int64_t> f;
    for (int64_t j = 0; j < a.modulus(); ++j) {
      f.push_back(j);
      const Rational d = translate_union(f, a).density();
      ASSERT_GE(d, prev);
      prev = d;
    }
    ASSERT_EQ(prev, Rational(1));
  }
}

TEST(SetProperties, LowerBound) {
  Rng rng = make_rng(9, 2, 7);
  for (int t = 0; t < 300; ++t) {
    const auto a = random_periodic(rng, 12, false), c = random_periodic(rng, 12, true);
    ASSERT_GE(periodic_product(a.negated(), c).density(), a.density());
  }
}
