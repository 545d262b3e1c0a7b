#include "greymap/error.hpp"
#include "greymap/grey.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

using namespace greymap;

namespace {

const GreyDomain kSym = GreyDomain::symmetric();

} // namespace

TEST(Interval, RejectsReversedOrNonFiniteBounds)
{
    EXPECT_THROW(Interval(1.0, 0.0), InvalidArgument);
    EXPECT_THROW(Interval(0.0, INFINITY), InvalidArgument);
    EXPECT_THROW(Interval(NAN, 0.0), InvalidArgument);
    EXPECT_NO_THROW(Interval(0.3, 0.3));
}

TEST(Interval, SumAddsBounds)
{
    EXPECT_EQ(Interval(1, 2) + Interval(3, 4), Interval(4, 6));
}

TEST(Interval, ProductIsHullOfCornerProducts)
{
    EXPECT_EQ(Interval(-1, 2) * Interval(3, 4), Interval(-4, 8));
    EXPECT_EQ(Interval(-2, -1) * Interval(-3, 4), Interval(-8, 6));
}

TEST(Interval, ZeroAnnihilates)
{
    EXPECT_EQ(Interval(0, 0) * Interval(-0.7, 0.4), Interval(0, 0));
}

TEST(Interval, SpansZeroOnlyWhenStrictlyInside)
{
    EXPECT_TRUE(Interval(-0.1, 0.1).spans_zero());
    EXPECT_FALSE(Interval(0.0, 0.1).spans_zero());
    EXPECT_FALSE(Interval(-0.1, 0.0).spans_zero());
}

TEST(GreyDomain, NeedsPositiveMeasure)
{
    EXPECT_THROW(GreyDomain(1.0, 1.0), InvalidArgument);
    EXPECT_THROW(GreyDomain(1.0, 0.0), InvalidArgument);
    EXPECT_DOUBLE_EQ(GreyDomain::symmetric().measure(), 2.0);
    EXPECT_DOUBLE_EQ(GreyDomain::unit().measure(), 1.0);
}

TEST(Ggn, RejectsNegativeGreynessAndNonFinite)
{
    EXPECT_THROW(Ggn(0.1, -0.01), InvalidArgument);
    EXPECT_THROW(Ggn(NAN, 0.0), InvalidArgument);
    EXPECT_THROW(Ggn(0.0, INFINITY), InvalidArgument);
}

TEST(GgnFromIntervals, NarrowIntervalNearOne)
{
    const Ggn g = ggn_from_interval({0.99, 1.00}, kSym);
    EXPECT_NEAR(g.kernel(), 0.995, 1e-15);
    EXPECT_NEAR(g.greyness(), 0.005, 1e-15);
}

TEST(GgnFromIntervals, StraddlingIntervalUsesWidthFallback)
{
    const Ggn g = ggn_from_interval({-0.1, 0.1}, kSym);
    EXPECT_EQ(g.kernel(), 0.0);
    EXPECT_NEAR(g.greyness(), 0.1, 1e-15);
}

TEST(GgnFromIntervals, DegenerateIntervalIsCrisp)
{
    const Ggn g = ggn_from_interval({0.7, 0.7}, kSym);
    EXPECT_EQ(g, Ggn(0.7, 0.0));
}

TEST(GgnFromIntervals, TwoPieceUnionMatchesHandValue)
{
    // kernel (-0.825 + 0.65) / 2; greyness (0.825*0.15 + 0.65*0.5) / 2 / 0.0875
    const std::vector<Interval> parts{{-0.9, -0.75}, {0.4, 0.9}};
    const Ggn g = ggn_from_intervals(parts, kSym);
    EXPECT_NEAR(g.kernel(), -0.0875, 1e-15);
    EXPECT_NEAR(g.greyness(), 2.564285714285714, 1e-12);
    EXPECT_GT(g.greyness(), 1.0); // not clamped
}

TEST(GgnFromIntervals, ProbabilitiesWeightTheMidpoints)
{
    const std::vector<Interval> parts{{0.1, 0.3}, {0.5, 0.7}};
    const std::vector<double> probs{0.25, 0.75};
    const Ggn g = ggn_from_intervals(parts, kSym, probs);
    EXPECT_NEAR(g.kernel(), 0.25 * 0.2 + 0.75 * 0.6, 1e-15);
    EXPECT_NEAR(g.greyness(), (0.2 * 0.2 + 0.6 * 0.2) / 2.0 / 0.5, 1e-15);
}

TEST(GgnFromIntervals, RejectsMalformedInput)
{
    const std::vector<Interval> none;
    EXPECT_THROW(ggn_from_intervals(none, kSym), InvalidArgument);

    const std::vector<Interval> outside{{0.5, 1.5}};
    EXPECT_THROW(ggn_from_intervals(outside, kSym), InvalidArgument);

    const std::vector<Interval> two{{0.1, 0.2}, {0.3, 0.4}};
    const std::vector<double> short_probs{1.0};
    const std::vector<double> bad_sum{0.5, 0.6};
    const std::vector<double> zero_prob{0.0, 1.0};
    EXPECT_THROW(ggn_from_intervals(two, kSym, short_probs), InvalidArgument);
    EXPECT_THROW(ggn_from_intervals(two, kSym, bad_sum), InvalidArgument);
    EXPECT_THROW(ggn_from_intervals(two, kSym, zero_prob), InvalidArgument);
}

TEST(GgnFromIntervals, ProbabilitySumToleranceIsTight)
{
    const std::vector<Interval> two{{0.1, 0.2}, {0.3, 0.4}};
    const std::vector<double> close{0.5, 0.5 + 1e-12};
    EXPECT_NO_THROW(ggn_from_intervals(two, kSym, close));
}

TEST(GgnArithmetic, AdditionWeightsGreynessByKernelMagnitude)
{
    const Ggn s = Ggn(0.4, 0.1) + Ggn(0.6, 0.2);
    EXPECT_NEAR(s.kernel(), 1.0, 1e-15);
    EXPECT_NEAR(s.greyness(), 0.16, 1e-15);
}

TEST(GgnArithmetic, ZeroOperandIsIdentityForAddition)
{
    const Ggn g(0.37, 0.08);
    EXPECT_EQ(g + Ggn(0.0, 0.0), g);
}

TEST(GgnArithmetic, CancellationKeepsGreyness)
{
    const Ggn s = Ggn(0.5, 0.1) + Ggn(-0.5, 0.1);
    EXPECT_EQ(s.kernel(), 0.0);
    EXPECT_NEAR(s.greyness(), 0.1, 1e-15);
    EXPECT_FALSE(approx_equal(s, Ggn(0.0, 0.0)));
}

TEST(GgnArithmetic, TwoZeroKernelsShareEqually)
{
    const Ggn s = Ggn(0.0, 0.2) + Ggn(0.0, 0.4);
    EXPECT_NEAR(s.greyness(), 0.3, 1e-15);
    const Ggn d = Ggn(0.0, 0.2) - Ggn(0.0, 0.4);
    EXPECT_NEAR(d.greyness(), 0.3, 1e-15);
}

TEST(GgnArithmetic, SubtractionUsesTheAdditionGreyness)
{
    const Ggn d = Ggn(0.4, 0.1) - Ggn(0.6, 0.2);
    EXPECT_NEAR(d.kernel(), -0.2, 1e-15);
    EXPECT_NEAR(d.greyness(), 0.16, 1e-15);
}

TEST(GgnArithmetic, ScalarMultiplicationKeepsGreyness)
{
    EXPECT_TRUE(approx_equal(2.0 * Ggn(0.3, 0.05), Ggn(0.6, 0.05), 1e-15));
    EXPECT_EQ(0.0 * Ggn(0.3, 0.05), Ggn(0.0, 0.05));
    const Ggn g(0.42, 0.07);
    EXPECT_EQ(1.0 * g, g);
    EXPECT_THROW(NAN * g, InvalidArgument);
}

TEST(GgnArithmetic, ProductTakesLargerGreyness)
{
    EXPECT_TRUE(approx_equal(Ggn(0.5, 0.01) * Ggn(0.8, 0.02), Ggn(0.4, 0.02), 1e-15));
    const Ggn g(0.63, 0.04);
    EXPECT_EQ(g * Ggn(1.0, 0.0), g);
    EXPECT_EQ(Ggn(0.0, 0.3) * Ggn(0.7, 0.1), Ggn(0.0, 0.3));
}

TEST(GgnArithmetic, QuotientInverseAndPower)
{
    const Ggn q = Ggn(0.6, 0.01) / Ggn(0.3, 0.05);
    EXPECT_NEAR(q.kernel(), 2.0, 1e-15);
    EXPECT_EQ(q.greyness(), 0.05);
    EXPECT_EQ(inverse(Ggn(0.5, 0.2)), Ggn(2.0, 0.2));
    EXPECT_EQ(pow(Ggn(0.5, 0.2), 2.0), Ggn(0.25, 0.2));
}

TEST(GgnArithmetic, ZeroKernelDivisionFails)
{
    try {
        (void)inverse(Ggn(0.0, 0.1));
        FAIL() << "expected ZeroKernel";
    } catch (const ZeroKernel& e) {
        EXPECT_STREQ(e.what(), "zero kernel");
    }
    EXPECT_THROW((void)(Ggn(0.3, 0.0) / Ggn(0.0, 0.0)), ZeroKernel);
}

TEST(GgnEquality, ApproxEqualUsesAbsoluteTolerance)
{
    EXPECT_TRUE(approx_equal(Ggn(0.1, 0.2), Ggn(0.1 + 5e-10, 0.2 - 5e-10)));
    EXPECT_FALSE(approx_equal(Ggn(0.1, 0.2), Ggn(0.1 + 2e-9, 0.2)));
}

TEST(GreyMetric, PairDistance)
{
    const Ggn g(0.2, 0.3);
    EXPECT_EQ(distance(g, g), 0.0);
    EXPECT_NEAR(distance(Ggn(3.0, 0.0), Ggn(0.0, 0.4)), 3.0265491900843112, 1e-15);
}

TEST(GreyMetric, VectorDistance)
{
    const std::vector<Ggn> x{{3.0, 0.0}, {0.0, 0.0}};
    const std::vector<Ggn> y{{0.0, 0.4}, {0.0, 0.0}};
    EXPECT_NEAR(distance(x, y), std::sqrt(9.16), 1e-15);
    EXPECT_EQ(distance(x, x), 0.0);

    const std::vector<Ggn> a{{0.1, 0.2}};
    const std::vector<Ggn> b{{-0.4, 0.05}};
    EXPECT_DOUBLE_EQ(distance(a, b), distance(a[0], b[0]));
}

TEST(GreyMetric, LengthMismatchFails)
{
    const std::vector<Ggn> x{{0.1, 0.0}};
    const std::vector<Ggn> y{{0.1, 0.0}, {0.2, 0.0}};
    EXPECT_THROW((void)distance(x, y), DimensionMismatch);
}
