#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "generators.hpp"
#include "latineq/calculus.hpp"
#include "latineq/errors.hpp"
#include "latineq/lattice.hpp"
#include "oracle.hpp"

namespace latineq {
namespace {

SparseFunction point_mass(std::size_t n, const Rational& v = 1) {
  return SparseFunction(n, {{LatticePoint(std::vector<Coord>(n, 0)), v}});
}

LatticeSet rect23() { return Cuboid({{0, 1}, {0, 2}}).to_set(); }
LatticeSet l_shape() { return LatticeSet(2, {{0, 0}, {1, 0}, {0, 1}}); }
SparseFunction two_point() { return SparseFunction(2, {{{0, 0}, 2}, {{1, 0}, 1}}); }

std::map<LatticePoint, Rational> as_map(const SparseFunction& f) {
  std::map<LatticePoint, Rational> out;
  for (const auto& e : f) out[e.point] = e.value;
  return out;
}

// ---------------------------------------------------------------------------

TEST(RationalTest, ParsesFractionsIntegersAndDecimals) {
  EXPECT_EQ(parse_rational("3/4"), Rational(3, 4));
  EXPECT_EQ(parse_rational("-6/8"), Rational(-3, 4));
  EXPECT_EQ(parse_rational("17"), Rational(17));
  EXPECT_EQ(parse_rational("-1.25"), Rational(-5, 4));
  EXPECT_EQ(parse_rational("0.1"), Rational(1, 10));
  EXPECT_EQ(parse_rational("2.5e-3"), Rational(1, 400));
  EXPECT_EQ(parse_rational(".5"), Rational(1, 2));
  EXPECT_THROW(parse_rational("1/0"), InvalidInput);
  EXPECT_THROW(parse_rational("abc"), InvalidInput);
  EXPECT_THROW(parse_rational(""), InvalidInput);
  EXPECT_THROW(parse_rational("1.2.3"), InvalidInput);
}

TEST(RationalTest, FormatsCanonically) {
  EXPECT_EQ(to_string(Rational(6, 4)), "3/2");
  EXPECT_EQ(to_string(Rational(-4, 2)), "-2");
}

TEST(RationalTest, DoubleConversionRoundsToNearest) {
  EXPECT_EQ(to_double(Rational(1, 3)), 1.0 / 3.0);
  EXPECT_EQ(to_double(Rational(-2, 7)), -2.0 / 7.0);
  // Parts wider than 53 bits go through the integer rounding path.
  BigInt big_num("123456789012345678901234567890");
  BigInt big_den("987654321098765432109876543");
  Rational r(big_num, big_den);
  r.canonicalize();
  // References from Python's correctly rounded float(Fraction(...)).
  EXPECT_EQ(to_double(r), 124.9999988609375);
  Rational wide(BigInt(1) << 80, 3);
  EXPECT_EQ(to_double(wide), 4.029752732048764e+23);
  Rational near_third(BigInt("1000000000000000000000000000001"), BigInt("300000000000000000000000000000"));
  near_third.canonicalize();
  EXPECT_EQ(to_double(near_third), 3.3333333333333335);
}

TEST(RationalTest, LogHandlesHugeValues) {
  BigInt huge = BigInt(1) << 5000;
  EXPECT_NEAR(log_of(Rational(huge)), 5000 * std::log(2.0), 1e-9);
  EXPECT_NEAR(log_of(Rational(1, 6)), -std::log(6.0), 1e-15);
}

// ---------------------------------------------------------------------------

TEST(LatticeTest, PointHelpers) {
  LatticePoint z{1, 2, 3};
  EXPECT_EQ(z.shifted(1), (LatticePoint{1, 3, 3}));
  EXPECT_EQ(z.shifted(0, -2), (LatticePoint{-1, 2, 3}));
  EXPECT_EQ(z.dropped(1), (LatticePoint{1, 3}));
}

TEST(LatticeTest, SparseFunctionPrunesZerosAndRejectsDuplicates) {
  SparseFunction f(2, {{{0, 0}, 0}, {{1, 0}, 3}});
  EXPECT_EQ(f.support_size(), 1u);
  EXPECT_EQ(f({1, 0}), 3);
  EXPECT_EQ(f({0, 0}), 0);
  EXPECT_THROW(SparseFunction(2, {{{0, 0}, 1}, {{0, 0}, 2}}), InvalidInput);
  EXPECT_THROW(SparseFunction(2, {{{0, 0, 0}, 1}}), InvalidInput);
}

TEST(LatticeTest, EmptyFunctionKeepsItsDimension) {
  SparseFunction f(3);
  EXPECT_TRUE(f.is_zero());
  EXPECT_EQ(f.dim(), 3u);
  EXPECT_EQ(f.support().dim(), 3u);
}

TEST(LatticeTest, SetMergesDuplicates) {
  LatticeSet a(2, {{1, 1}, {0, 0}, {1, 1}});
  EXPECT_EQ(a.size(), 2u);
  EXPECT_TRUE(a.contains({1, 1}));
  EXPECT_FALSE(a.contains({1, 0}));
  EXPECT_THROW(LatticeSet(2, {{1, 1, 1}}), InvalidInput);
}

TEST(LatticeTest, CuboidInvariants) {
  Cuboid c({{0, 1}, {0, 2}});
  EXPECT_EQ(c.to_set().size(), 6u);
  EXPECT_EQ(c.cardinality(), 6);
  EXPECT_FALSE(c.is_cube());
  EXPECT_TRUE(Cuboid({{3, 5}, {-1, 1}}).is_cube());
  EXPECT_THROW(Cuboid({{2, 1}}), InvalidInput);
  EXPECT_THROW(Cuboid(std::vector<std::pair<Coord, Coord>>{}), InvalidInput);
  Cuboid d({{-1, 0}, {2, 2}, {0, 1}});
  for (const auto& z : d.to_set()) {
    for (Axis i = 0; i < 3; ++i) {
      EXPECT_GE(z[i], d.intervals()[i].first);
      EXPECT_LE(z[i], d.intervals()[i].second);
    }
  }
  EXPECT_EQ(d.to_set().size(), 4u);
}

TEST(LatticeTest, CanonicalTranslateTouchesOrigin) {
  LatticeSet a(2, {{5, -3}, {6, -3}, {5, -2}});
  LatticeSet c = a.canonical_translate();
  EXPECT_EQ(c, LatticeSet(2, {{0, 0}, {1, 0}, {0, 1}}));
}

// ---------------------------------------------------------------------------

TEST(IndicatorTest, SpecExamples) {
  auto single = indicator(LatticeSet(2, {{0, 0}}));
  ASSERT_EQ(single.support_size(), 1u);
  EXPECT_EQ(single({0, 0}), 1);

  auto uniform = indicator(rect23(), Rational(1, 6));
  EXPECT_EQ(uniform.support_size(), 6u);
  for (const auto& e : uniform) EXPECT_EQ(e.value, Rational(1, 6));

  auto l = indicator(l_shape(), 2);
  EXPECT_EQ(l.support_size(), 3u);
  for (const auto& e : l) EXPECT_EQ(e.value, 2);
}

TEST(IndicatorTest, RejectsZeroScaleAndEmptySet) {
  EXPECT_THROW(indicator(rect23(), 0), InvalidInput);
  EXPECT_THROW(indicator(LatticeSet(2)), InvalidInput);
}

TEST(PartialDifferenceTest, SinglePointTelescope) {
  auto g = partial_difference(point_mass(2), 0);
  std::map<LatticePoint, Rational> expected{{{-1, 0}, 1}, {{0, 0}, -1}};
  EXPECT_EQ(as_map(g), expected);
}

TEST(PartialDifferenceTest, RectangleAlongFirstAxis) {
  auto g = partial_difference(indicator(rect23()), 0);
  ASSERT_EQ(g.support_size(), 6u);
  for (const auto& e : g) {
    if (e.point[0] == -1) {
      EXPECT_EQ(e.value, 1);
    } else {
      EXPECT_EQ(e.point[0], 1);
      EXPECT_EQ(e.value, -1);
    }
  }
}

TEST(PartialDifferenceTest, TwoPointAlongSecondAxis) {
  auto g = partial_difference(two_point(), 1);
  std::map<LatticePoint, Rational> expected{
      {{0, -1}, 2}, {{0, 0}, -2}, {{1, -1}, 1}, {{1, 0}, -1}};
  EXPECT_EQ(as_map(g), expected);
}

TEST(PartialDifferenceTest, AxisOutOfRange) {
  EXPECT_THROW(partial_difference(two_point(), 2), InvalidInput);
  EXPECT_THROW(partial_l1(two_point(), 5), InvalidInput);
}

TEST(NormTest, SpecExamples) {
  for (auto p : {Rational(1, 2), Rational(1), Rational(3, 2), Rational(2), Rational(7)}) {
    EXPECT_DOUBLE_EQ(norm(point_mass(2, Rational(-5, 3)), p), 5.0 / 3.0);
  }
  EXPECT_NEAR(norm(indicator(rect23()), 2), std::sqrt(6.0), 1e-15);
  EXPECT_NEAR(norm(two_point(), 2), std::sqrt(5.0), 1e-15);
  EXPECT_EQ(norm(SparseFunction(2), 2), 0.0);
  EXPECT_THROW(norm(two_point(), 0), InvalidInput);
  EXPECT_THROW(norm(two_point(), -1), InvalidInput);
}

TEST(DiffNormTest, SpecExamples) {
  EXPECT_EQ(diff_norm(point_mass(2), 1), 4.0);
  EXPECT_EQ(diff_l1(point_mass(2)), 4);
  EXPECT_EQ(diff_l1(indicator(rect23())), 10);
  EXPECT_EQ(partial_l1(indicator(rect23()), 0), 6);
  EXPECT_EQ(partial_l1(indicator(rect23()), 1), 4);
  EXPECT_EQ(diff_l1(indicator(Cuboid({{0, 1}, {0, 1}}).to_set(), Rational(1, 2))), 4);
  EXPECT_THROW(diff_norm(two_point(), 0), InvalidInput);
}

TEST(MaxProjectionTest, SpecExamples) {
  auto f1 = max_projection(point_mass(2), 0);
  EXPECT_EQ(f1.dim(), 1u);
  EXPECT_EQ(as_map(f1), (std::map<LatticePoint, Rational>{{{0}, 1}}));
  EXPECT_EQ(l1_norm(f1), 1);

  SparseFunction vertical(2, {{{0, 0}, 2}, {{0, 1}, 1}});
  EXPECT_EQ(as_map(max_projection(vertical, 0)), (std::map<LatticePoint, Rational>{{{0}, 2}, {{1}, 1}}));

  auto f2 = max_projection(two_point(), 1);
  EXPECT_EQ(as_map(f2), (std::map<LatticePoint, Rational>{{{0}, 2}, {{1}, 1}}));
  EXPECT_EQ(l1_norm(f2), 3);
}

TEST(MaxProjectionTest, Errors) {
  SparseFunction negative(2, {{{0, 0}, -1}});
  EXPECT_THROW(max_projection(negative, 0), DomainError);
  EXPECT_THROW(max_projection(SparseFunction(1, {{{0}, 1}}), 0), InvalidInput);
  EXPECT_THROW(max_projection(two_point(), 2), InvalidInput);
}

TEST(CoordProjectionTest, SpecExamples) {
  EXPECT_EQ(coord_projection(rect23(), 1), (std::vector<Coord>{0, 1, 2}));
  EXPECT_EQ(coord_projection(l_shape(), 0), (std::vector<Coord>{0, 1}));
  LatticeSet gapped(2, {{0, 0}, {0, 2}, {1, 0}, {1, 2}});
  EXPECT_EQ(coord_projection(gapped, 1), (std::vector<Coord>{0, 2}));
  EXPECT_THROW(coord_projection(gapped, 2), InvalidInput);
}

TEST(BoundaryTest, SpecExamples) {
  EXPECT_EQ(boundary_count(LatticeSet(2, {{0, 0}})), 4u);
  EXPECT_EQ(boundary_count(rect23()), 10u);
  EXPECT_EQ(boundary_count(l_shape()), 8u);
  EXPECT_EQ(boundary_count(LatticeSet(2)), 0u);
  EXPECT_EQ(boundary_edges(rect23()).size(), 10u);
  for (const auto& [in, out] : boundary_edges(l_shape())) {
    EXPECT_TRUE(l_shape().contains(in));
    EXPECT_FALSE(l_shape().contains(out));
  }
}

TEST(EntropyTest, SpecExamples) {
  EXPECT_EQ(entropy(point_mass(2), Rational(1, 2)), 0.0);
  EXPECT_EQ(entropy(point_mass(2), 3), 0.0);
  // |A|^{-1/p} chi_A with |A| = 6: p = 1 and p = 2 (1/sqrt(6) is irrational,
  // so p = 2 uses the square root of a uniform 1/6 mass through p = 1/2).
  EXPECT_NEAR(entropy(indicator(rect23(), Rational(1, 6)), 1), -std::log(6.0), 1e-14);
  EXPECT_NEAR(entropy(indicator(rect23(), Rational(1, 36)), Rational(1, 2)), -std::log(6.0), 1e-14);
  EXPECT_NEAR(entropy(two_point(), 1), 2 * std::log(2.0), 1e-15);
  EXPECT_THROW(entropy(SparseFunction(2, {{{0, 0}, -1}}), 1), DomainError);
}

TEST(LineBoundTest, SpecExamples) {
  auto r = pointwise_line_bound(point_mass(2), 0);
  EXPECT_TRUE(r.holds);
  EXPECT_TRUE(r.all_equal);
  EXPECT_EQ(r.worst_max, 1);
  EXPECT_EQ(r.worst_half_variation, 1);

  auto t = pointwise_line_bound(two_point(), 0);
  EXPECT_TRUE(t.holds);
  EXPECT_TRUE(t.all_equal);
  EXPECT_EQ(t.worst_max, 2);
  EXPECT_EQ(t.worst_half_variation, 2);  // (2 + 1 + 1) / 2

  SparseFunction plateaus(2, {{{0, 0}, 1}, {{5, 0}, 1}});
  auto s = pointwise_line_bound(plateaus, 0);
  EXPECT_TRUE(s.holds);
  EXPECT_FALSE(s.all_equal);
  EXPECT_EQ(s.worst_max, 1);
  EXPECT_EQ(s.worst_half_variation, 2);
  EXPECT_EQ(s.lines_checked, 1u);
}

// ---------------------------------------------------------------------------
// Properties against the dense brute-force oracle.

class CoreProperty : public ::testing::TestWithParam<std::size_t> {};

TEST_P(CoreProperty, MatchesDenseOracle) {
  const std::size_t n = GetParam();
  gen::Source src(1000 + n);
  for (int trial = 0; trial < 150; ++trial) {
    auto f = src.function(n, -2, n == 2 ? 3 : 1, true);
    oracle::DenseGrid grid(f);
    Rational total = 0;
    for (Axis i = 0; i < n; ++i) {
      EXPECT_EQ(partial_l1(f, i), grid.partial_l1(i));
      EXPECT_EQ(l1_norm(partial_difference(f, i)), grid.partial_l1(i));
      EXPECT_EQ(l1_norm(max_projection(f.abs(), i)), grid.max_projection_l1(i));
      EXPECT_EQ(pointwise_line_bound(f, i).worst_half_variation - pointwise_line_bound(f, i).worst_max,
                grid.min_line_slack(i));
      total += grid.partial_l1(i);
    }
    EXPECT_EQ(diff_l1(f), total);
    EXPECT_EQ(power_sum(f, 3), grid.power_sum(3));
    for (double p : {0.5, 1.5, 2.0, 3.0}) {
      Rational pr = parse_rational(std::to_string(p));
      EXPECT_NEAR(norm(f, pr), grid.norm(p), 1e-12 * grid.norm(p));
    }
    auto g = f.abs();
    EXPECT_NEAR(entropy(g, Rational(3, 2)), oracle::DenseGrid(g).entropy(1.5),
                1e-12 * std::max(1.0, std::abs(oracle::DenseGrid(g).entropy(1.5))));

    auto a = f.support();
    oracle::DenseGrid set_grid(a);
    EXPECT_EQ(boundary_count(a), set_grid.boundary_edges());
    for (Axis i = 0; i < n; ++i) {
      EXPECT_EQ(hyperplane_projection(a, i).size(), set_grid.projection_size(i));
    }
  }
}

TEST_P(CoreProperty, Invariants) {
  const std::size_t n = GetParam();
  gen::Source src(2000 + n);
  for (int trial = 0; trial < 150; ++trial) {
    auto f = src.function(n, -2, 2, true, 0.4);
    for (Axis i = 0; i < n; ++i) {
      // Telescoping: each line of d_i f sums to zero.
      std::map<LatticePoint, Rational> line_sums;
      for (const auto& e : partial_difference(f, i)) line_sums[e.point.dropped(i)] += e.value;
      for (const auto& [line, sum] : line_sums) EXPECT_EQ(sum, 0);
      // Line bound holds on every f.
      EXPECT_TRUE(pointwise_line_bound(f, i).holds);
      // Sign flip leaves ||d_i f||_1 unchanged.
      EXPECT_EQ(partial_l1(f.scaled(-1), i), partial_l1(f, i));
    }
    // ||df||_p^p = sum_i ||d_i f||_p^p.
    for (auto p : {Rational(1), Rational(2), Rational(3, 2)}) {
      double by_axis = 0;
      for (Axis i = 0; i < n; ++i) by_axis += std::pow(norm(partial_difference(f, i), p), to_double(p));
      double total = std::pow(diff_norm(f, p), to_double(p));
      EXPECT_NEAR(total, by_axis, 1e-12 * std::max(1.0, total));
    }
    // |dA| = ||d chi_A||_1 = sum_i ||d_i chi_A||_1.
    auto a = f.support();
    Rational by_axis = 0;
    for (Axis i = 0; i < n; ++i) {
      by_axis += partial_l1(indicator(a), i);
      EXPECT_EQ(Rational(static_cast<long>(boundary_count(a, i))), partial_l1(indicator(a), i));
    }
    EXPECT_EQ(Rational(static_cast<long>(boundary_count(a))), diff_l1(indicator(a)));
    EXPECT_EQ(by_axis, diff_l1(indicator(a)));
    // Max projection: positive homogeneity, l1 contraction, support image.
    auto g = f.abs();
    Rational lambda = src.rational(false);
    for (Axis i = 0; i < n; ++i) {
      auto gi = max_projection(g, i);
      EXPECT_EQ(max_projection(g.scaled(lambda), i), gi.scaled(lambda));
      EXPECT_LE(l1_norm(gi), l1_norm(g));
      EXPECT_EQ(gi.support(), hyperplane_projection(g.support(), i));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Dims, CoreProperty, ::testing::Values(2, 3));

TEST(CoreProperty, CuboidProjectionsAreIntervals) {
  gen::Source src(77);
  for (int trial = 0; trial < 50; ++trial) {
    auto c = src.cuboid(3, 4);
    auto a = c.to_set();
    for (Axis j = 0; j < 3; ++j) {
      auto proj = coord_projection(a, j);
      std::vector<Coord> expected;
      for (Coord x = c.intervals()[j].first; x <= c.intervals()[j].second; ++x) expected.push_back(x);
      EXPECT_EQ(proj, expected);
    }
  }
}

}  // namespace
}  // namespace latineq
