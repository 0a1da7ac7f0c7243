#include <gtest/gtest.h>

#include "prodset/error.hpp"
#include "prodset/group.hpp"
#include "prodset/rng.hpp"

using namespace prodset;

namespace {

GroupElement random_element(const GroupDescriptor& d, Rng& rng) {
  switch (d.kind()) {
    case GroupKind::Lattice: {
      std::vector<int64_t> v(d.arity());
      for (auto& x : v) x = uniform_int(rng, -50, 50);
      return GroupElement(v);
    }
    case GroupKind::Cyclic: {
      std::vector<int64_t> v;
      for (int64_t m : d.moduli()) v.push_back(uniform_int(rng, 0, m - 1));
      return GroupElement(v);
    }
    case GroupKind::Free: {
      std::vector<int64_t> w(static_cast<std::size_t>(uniform_int(rng, 0, 8)));
      for (auto& x : w) {
        x = uniform_int(rng, 1, d.arity());
        if (uniform_int(rng, 0, 1)) x = -x;
      }
      return GroupElement(free_reduce(w));
    }
  }
  return d.identity();
}

}  // namespace

TEST(GroupCore, IntegerProduct) {
  const auto z = GroupDescriptor::lattice(1);
  EXPECT_EQ(z.mul(z.integer(3), z.integer(5)), z.integer(8));
  EXPECT_EQ(z.inv(z.integer(7)), z.integer(-7));
}

TEST(GroupCore, FreeReduction) {
  const auto f2 = GroupDescriptor::free(2);
  EXPECT_EQ(f2.mul(f2.word("a"), f2.word("A")), f2.identity());
  EXPECT_EQ(f2.mul(f2.word("ab"), f2.word("Ba")), f2.word("aa"));
  EXPECT_EQ(f2.inv(f2.word("ab")), f2.word("BA"));
  EXPECT_EQ(f2.format(f2.identity()), "e");
  EXPECT_EQ(f2.format(f2.word("abA")), "abA");
}

TEST(GroupCore, CyclicInverse) {
  const auto z4 = GroupDescriptor::cyclic({4});
  EXPECT_EQ(z4.inv(z4.integer(3)), z4.integer(1));
  EXPECT_EQ(z4.order(), 4);
}

TEST(GroupCore, DescriptorMismatch) {
  const auto f2 = GroupDescriptor::free(2);
  const auto z = GroupDescriptor::lattice(1);
  EXPECT_THROW(f2.mul(f2.word("a"), GroupElement({0, 0})), DescriptorMismatch);
  EXPECT_THROW(z.mul(z.integer(1), GroupElement({1, 2})), DescriptorMismatch);
  EXPECT_THROW(f2.mul(f2.word("a"), GroupElement({3})), DescriptorMismatch);
}

TEST(GroupCore, InvalidDescriptors) {
  EXPECT_THROW(GroupDescriptor::lattice(0), InvalidArgument);
  EXPECT_THROW(GroupDescriptor::cyclic({0}), InvalidArgument);
  EXPECT_THROW(GroupDescriptor::free(0), InvalidArgument);
}

TEST(GroupCore, ParseAndFormatDescriptors) {
  for (const char* text : {"kind=free,rank=2", "kind=lattice,dim=1", "kind=cyclic,moduli=12:8"}) {
    const auto d = GroupDescriptor::parse(text);
    EXPECT_EQ(GroupDescriptor::parse(d.to_string()), d) << text;
  }
  EXPECT_EQ(GroupDescriptor::parse("kind=cyclic,moduli=12:8").moduli(), (std::vector<int64_t>{12, 8}));
  EXPECT_THROW(GroupDescriptor::parse("kind=torus"), ParseError);
}

TEST(GroupCore, BallExamples) {
  const auto f2 = GroupDescriptor::free(2);
  const Ball b1 = enumerate_ball(f2, 1);
  std::vector<std::string> names;
  for (const auto& g : b1.elements()) names.push_back(f2.format(g));
  EXPECT_EQ(names, (std::vector<std::string>{"e", "a", "A", "b", "B"}));
  EXPECT_EQ(enumerate_ball(f2, 2).size(), 17u);
  EXPECT_EQ(enumerate_ball(f2, 0).size(), 1u);

  const auto z = GroupDescriptor::lattice(1);
  std::vector<int64_t> ints;
  const Ball zb = enumerate_ball(z, 2);
  for (const auto& g : zb.elements()) ints.push_back(g[0]);
  EXPECT_EQ(ints, (std::vector<int64_t>{-2, -1, 0, 1, 2}));
}

TEST(GroupCore, FreeBallSizesMatchOracle) {
  const std::vector<std::size_t> oracle = {1, 5, 17, 53, 161, 485, 1457};
  const auto f2 = GroupDescriptor::free(2);
  for (int r = 0; r <= 6; ++r) {
    EXPECT_EQ(enumerate_ball(f2, r).size(), oracle[r]);
    EXPECT_EQ(predicted_ball_size(f2, r), oracle[r]);
  }
  for (int k = 1; k <= 4; ++k) {
    const auto fk = GroupDescriptor::free(k);
    for (int r = 1; r <= (k <= 2 ? 6 : 4); ++r) {
      std::size_t formula;
      if (k == 1) {
        formula = 2 * r + 1;
      } else {
        std::size_t p = 1;
        for (int i = 0; i < r; ++i) p *= 2 * k - 1;
        formula = 1 + 2 * k * (p - 1) / (2 * k - 2);
      }
      EXPECT_EQ(enumerate_ball(fk, r).size(), formula) << "k=" << k << " r=" << r;
    }
  }
}

TEST(GroupCore, BallNestingAndDeterminism) {
  const auto f3 = GroupDescriptor::free(3);
  const Ball b2 = enumerate_ball(f3, 2), b3 = enumerate_ball(f3, 3);
  for (const auto& g : b2.elements()) EXPECT_TRUE(b3.contains(g));
  EXPECT_EQ(enumerate_ball(f3, 3).elements(), b3.elements());
  for (std::size_t i = 1; i < b3.size(); ++i) EXPECT_TRUE(f3.less(b3.elements()[i - 1], b3.elements()[i]));
}

TEST(GroupCore, BallCap) {
  EXPECT_THROW(enumerate_ball(GroupDescriptor::free(2), 20), ResourceCapExceeded);
  EXPECT_THROW(enumerate_ball(GroupDescriptor::free(2), 6, 100), ResourceCapExceeded);
}

TEST(GroupCore, LatticeBox) {
  const auto z2 = GroupDescriptor::lattice(2);
  const Window w = lattice_box(z2, 0, 3);
  EXPECT_EQ(w.size(), 9u);
  EXPECT_TRUE(w.contains(GroupElement({2, 2})));
  EXPECT_FALSE(w.contains(GroupElement({3, 0})));
}

class GroupAxioms : public ::testing::TestWithParam<const char*> {};

TEST_P(GroupAxioms, HoldOnSeededTriples) {
  const auto d = GroupDescriptor::parse(GetParam());
  Rng rng = make_rng(2024, 1, 0);
  for (int t = 0; t < 1000; ++t) {
    const auto g = random_element(d, rng), h = random_element(d, rng), k = random_element(d, rng);
    ASSERT_EQ(d.mul(d.mul(g, h), k), d.mul(g, d.mul(h, k)));
    ASSERT_EQ(d.mul(g, d.identity()), g);
    ASSERT_EQ(d.mul(d.identity(), g), g);
    ASSERT_EQ(d.mul(g, d.inv(g)), d.identity());
    ASSERT_EQ(d.mul(d.inv(g), g), d.identity());
    ASSERT_TRUE(d.contains(d.mul(g, h)));
    if (d.is_abelian()) {
      ASSERT_EQ(d.mul(g, h), d.mul(h, g));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Descriptors, GroupAxioms,
                         ::testing::Values("kind=lattice,dim=1", "kind=lattice,dim=3", "kind=cyclic,moduli=12:8",
                                           "kind=cyclic,moduli=7", "kind=free,rank=1", "kind=free,rank=2",
                                           "kind=free,rank=3"));

TEST(GroupCore, FreeReductionIdempotent) {
  Rng rng = make_rng(7, 1, 0);
  for (int t = 0; t < 1000; ++t) {
    std::vector<int64_t> w(static_cast<std::size_t>(uniform_int(rng, 0, 12)));
    for (auto& x : w) x = uniform_int(rng, 0, 1) ? uniform_int(rng, 1, 3) : -uniform_int(rng, 1, 3);
    const auto once = free_reduce(w);
    EXPECT_EQ(free_reduce(once), once);
    for (std::size_t i = 1; i < once.size(); ++i) EXPECT_NE(once[i], -once[i - 1]);
  }
}

TEST(GroupCore, ElementRoundTrip) {
  const auto f2 = GroupDescriptor::free(2);
  const Ball b3 = enumerate_ball(f2, 3);
  for (const auto& g : b3.elements()) EXPECT_EQ(f2.parse_element(f2.format(g)), g);
  const auto c = GroupDescriptor::cyclic({12, 8});
  EXPECT_EQ(c.parse_element("11,7"), GroupElement({11, 7}));
  EXPECT_EQ(c.parse_element("12,-1"), GroupElement({0, 7}));
  EXPECT_THROW(c.parse_element("1"), ParseError);
}
