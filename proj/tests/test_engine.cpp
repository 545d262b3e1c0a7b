#include "greymap/engine.hpp"
#include "greymap/error.hpp"
#include "greymap/scenarios.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

using namespace greymap;

namespace {

const Activation kSig1(ActivationKind::Sigmoid, 1.0);
const Activation kTanh1(ActivationKind::Tanh, 1.0);

Trajectory from_values(const std::vector<std::vector<double>>& rows)
{
    Trajectory t;
    for (const auto& r : rows) {
        GgnVector v;
        for (double x : r) {
            v.push_back(Ggn::crisp(x));
        }
        t.states.push_back(v);
    }
    return t;
}

Model single_node(ActivationKind kind, double w, double a0)
{
    Model m;
    m.name = "one";
    m.activation = Activation(kind, 1.0);
    m.state_domain = default_state_domain(kind);
    m.weights = Matrix<Ggn>{{Ggn::crisp(w)}};
    m.initial_state = {Ggn::crisp(a0)};
    return m;
}

} // namespace

TEST(Engine, ParsesNamesCaseInsensitively)
{
    EXPECT_EQ(parse_engine("FGGCM"), Engine::Fggcm);
    EXPECT_EQ(parse_engine("fcm"), Engine::Fcm);
    EXPECT_EQ(parse_engine("FgCm"), Engine::Fgcm);
    EXPECT_THROW(parse_engine("nn"), InvalidArgument);
    EXPECT_EQ(to_string(Engine::Fgcm), "fgcm");
}

TEST(FcmStep, ZeroWeightsGiveActivationOfZero)
{
    const auto w = Matrix<double>::square(3);
    const std::vector<double> a{0.2, -0.7, 0.9};
    for (double x : fcm_step(w, a, kSig1)) {
        EXPECT_EQ(x, 0.5);
    }
    for (double x : fcm_step(w, a, kTanh1)) {
        EXPECT_EQ(x, 0.0);
    }
}

TEST(FcmStep, SingleNodeMatchesOracle)
{
    const Matrix<double> w{{1.0}};
    const std::vector<double> a{1.0};
    EXPECT_NEAR(fcm_step(w, a, kSig1)[0], 0.731058578630004879, 1e-16);
}

TEST(FcmStep, RowIsTheReceivingNode)
{
    const Matrix<double> w{{0.0, 0.5}, {0.0, 0.0}};
    const std::vector<double> a{0.0, 1.0};
    const auto next = fcm_step(w, a, kTanh1);
    EXPECT_EQ(next[0], std::tanh(0.5));
    EXPECT_EQ(next[1], 0.0);
}

TEST(FcmStep, DimensionMismatchFails)
{
    const auto w = Matrix<double>::square(2);
    const std::vector<double> a{1.0, 2.0, 3.0};
    EXPECT_THROW(fcm_step(w, a, kSig1), DimensionMismatch);
    const Matrix<double> rect(2, 3);
    const std::vector<double> b{1.0, 2.0};
    EXPECT_THROW(fcm_step(rect, b, kSig1), DimensionMismatch);
}

TEST(FgcmStep, PointIntervalsReproduceCrispStep)
{
    const Matrix<double> w{{0.3, -0.8}, {0.6, 0.1}};
    const std::vector<double> a{0.4, -0.2};
    const auto crisp = fcm_step(w, a, kTanh1);
    const auto iw = w.map([](double x) { return Interval::point(x); });
    const std::vector<Interval> ia{Interval::point(0.4), Interval::point(-0.2)};
    const auto out = fgcm_step(iw, ia, kTanh1);
    for (std::size_t i = 0; i < 2; ++i) {
        EXPECT_EQ(out[i].lower(), crisp[i]);
        EXPECT_EQ(out[i].upper(), crisp[i]);
    }
}

TEST(FgcmStep, WebLastNodeFirstStepMatchesHandValue)
{
    // sum of interval products for node 7 is [2.7004, 2.8318]
    const Model web = builtin(ScenarioId::Web);
    const auto out = fgcm_step(*web.interval_weights, *web.initial_intervals, kSig1);
    EXPECT_NEAR(out[6].lower(), 0.937050242902332825, 1e-12);
    EXPECT_NEAR(out[6].upper(), 0.944370240904405388, 1e-12);
}

TEST(FgcmStep, DimensionMismatchFails)
{
    const auto w = Matrix<Interval>::square(2);
    const std::vector<Interval> a(3);
    EXPECT_THROW(fgcm_step(w, a, kSig1), DimensionMismatch);
}

TEST(FggcmStep, ZeroGreynessDegeneratesToCrisp)
{
    const Matrix<double> w{{0.3, -0.8, 0.0}, {0.6, 0.1, -0.4}, {0.0, 0.9, 0.2}};
    const std::vector<double> a{0.4, -0.2, 0.7};
    const auto crisp = fcm_step(w, a, kTanh1);
    const auto gw = w.map([](double x) { return Ggn::crisp(x); });
    GgnVector ga;
    for (double x : a) {
        ga.push_back(Ggn::crisp(x));
    }
    const auto out = fggcm_step(gw, ga, kTanh1);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(out[i].kernel(), crisp[i]);
        EXPECT_EQ(out[i].greyness(), 0.0);
    }
}

TEST(FggcmStep, TanhZeroStateIsFixed)
{
    const Matrix<Ggn> w{{Ggn(0.5, 0.0), Ggn(-0.3, 0.0)}, {Ggn(0.2, 0.0), Ggn(0.9, 0.0)}};
    const GgnVector a{Ggn(0.0, 0.0), Ggn(0.0, 0.0)};
    EXPECT_EQ(fggcm_step(w, a, kTanh1), a);
}

TEST(FggcmStep, CivilThirdNodeFirstStep)
{
    const Model civil = builtin(ScenarioId::Civil);
    const auto out = fggcm_step(civil.weights, civil.initial_state, Activation(ActivationKind::Tanh, 0.2));
    // only weight into node 3 is 0.6_{0.01} from node 1 (0.8_{0.01})
    EXPECT_NEAR(out[2].kernel(), 0.0957061711232549719, 1e-15);
    EXPECT_NEAR(out[2].greyness(), 0.01, 1e-15);
}

TEST(FggcmStep, SigmoidGreynessIsKernelTimesRatio)
{
    const Matrix<Ggn> w{{Ggn(0.5, 0.1), Ggn(-0.2, 0.3)}, {Ggn(0.0, 0.0), Ggn(0.0, 0.0)}};
    const GgnVector a{Ggn(0.4, 0.2), Ggn(0.5, 0.05)};
    const auto out = fggcm_step(w, a, kSig1);
    const double k = kSig1(0.4 * 0.5 - 0.2 * 0.5);
    EXPECT_EQ(out[0].kernel(), k);
    EXPECT_NEAR(out[0].greyness(), k * (0.2 * 0.2 + 0.3 * 0.1) / 0.3, 1e-15);
    // empty row: kernel sigmoid(0), greyness held
    EXPECT_EQ(out[1].kernel(), 0.5);
    EXPECT_EQ(out[1].greyness(), 0.05);
}

TEST(FggcmStep, TinyRowSumHoldsGreyness)
{
    const Matrix<Ggn> w{{Ggn(1e-7, 0.3)}};
    const GgnVector a{Ggn(1e-7, 0.02)};
    const auto out = fggcm_step(w, a, kTanh1);
    EXPECT_EQ(out[0].greyness(), 0.02);
}

TEST(Run, ExactFixedPointStopsImmediately)
{
    Model m = single_node(ActivationKind::Tanh, 0.5, 0.0);
    const Trajectory t = run(m, 1.0, Engine::Fggcm);
    EXPECT_LE(t.states.size(), 3u);
    for (const auto& s : t.states) {
        EXPECT_EQ(s, m.initial_state);
    }
    const Behavior b = classify(t);
    EXPECT_EQ(b.kind, BehaviorKind::FixedPoint);
    EXPECT_EQ(b.settle_step, 0u);
}

TEST(Run, ZeroWeightSigmoidSettlesAtHalfAfterOneStep)
{
    Model m = single_node(ActivationKind::Sigmoid, 0.0, 0.9);
    const Trajectory t = run(m, 1.0, Engine::Fcm);
    const Behavior b = classify(t);
    EXPECT_EQ(b.kind, BehaviorKind::FixedPoint);
    EXPECT_EQ(b.settle_step, 1u);
    EXPECT_EQ(b.final_state[0].kernel(), 0.5);
}

TEST(Run, RecordsInitialStateAndRespectsHorizon)
{
    Model m = builtin(ScenarioId::Web);
    m.max_steps = 10;
    const Trajectory t = run(m, 4.0, Engine::Fggcm);
    EXPECT_EQ(t.states.front(), m.initial_state);
    EXPECT_EQ(t.steps(), 10u);
    EXPECT_EQ(t.lambda, 4.0);
    EXPECT_EQ(t.engine, Engine::Fggcm);
    EXPECT_EQ(t.model, "web");
}

TEST(Run, FgcmStatesUseMidpointAndScaledWidth)
{
    const Model civil = builtin(ScenarioId::Civil);
    const Trajectory t = run(civil, 0.2, Engine::Fgcm);
    EXPECT_NEAR(t.states[0][0].kernel(), 0.8, 1e-15);
    EXPECT_NEAR(t.states[0][0].greyness(), 0.01, 1e-15);
}

TEST(Run, GreyMapsRejectCrispEngines)
{
    const Model mc = builtin(ScenarioId::WebCase2);
    EXPECT_THROW(run(mc, 1.0, Engine::Fcm), UnsupportedEngine);
    EXPECT_THROW(run(mc, 1.0, Engine::Fgcm), UnsupportedEngine);
    EXPECT_NO_THROW(run(mc, 1.0, Engine::Fggcm));

    const Model c1 = builtin(ScenarioId::CivilCase1);
    EXPECT_THROW(run(c1, 1.0, Engine::Fcm), UnsupportedEngine);
    EXPECT_NO_THROW(run(c1, 1.0, Engine::Fgcm));
}

TEST(Run, SupportsReflectsAvailableForms)
{
    EXPECT_TRUE(builtin(ScenarioId::Web).supports(Engine::Fcm));
    EXPECT_TRUE(builtin(ScenarioId::Web).supports(Engine::Fgcm));
    EXPECT_FALSE(builtin(ScenarioId::WebCase1).supports(Engine::Fcm));
    EXPECT_FALSE(builtin(ScenarioId::CivilCase2).supports(Engine::Fgcm));
    EXPECT_TRUE(builtin(ScenarioId::CivilCase2).supports(Engine::Fggcm));
}

TEST(Run, InvalidModelsAreRejected)
{
    Model m = single_node(ActivationKind::Tanh, 0.5, 0.1);
    m.max_steps = 1;
    EXPECT_THROW(run(m, 1.0, Engine::Fggcm), InvalidArgument);
    m.max_steps = 300;
    m.fp_tolerance = 0.0;
    EXPECT_THROW(run(m, 1.0, Engine::Fggcm), InvalidArgument);
    m.fp_tolerance = 1e-6;
    m.initial_state.push_back(Ggn::crisp(0.0));
    EXPECT_THROW(run(m, 1.0, Engine::Fggcm), DimensionMismatch);
    Model empty;
    EXPECT_THROW(empty.validate(), InvalidArgument);
}

TEST(Run, WebCrispSettlesAtHalfSlope)
{
    const Behavior b = classify(run(builtin(ScenarioId::Web), 0.5, Engine::Fcm));
    EXPECT_EQ(b.kind, BehaviorKind::FixedPoint);
}

TEST(Run, WebCrispCyclesAtSlopeTwo)
{
    const Behavior b = classify(run(builtin(ScenarioId::Web), 2.0, Engine::Fcm));
    EXPECT_EQ(b.kind, BehaviorKind::LimitCycle);
    EXPECT_EQ(b.period, 2u);
}

TEST(Run, CivilGreySettlesToZeroKernels)
{
    const Behavior b = classify(run(builtin(ScenarioId::Civil), 0.2, Engine::Fggcm));
    EXPECT_EQ(b.kind, BehaviorKind::FixedPoint);
    for (const auto& g : b.final_state) {
        EXPECT_LT(std::abs(g.kernel()), 1e-4);
    }
}

TEST(Classify, ConstantTrajectoryIsFixedAtZero)
{
    const Behavior b = classify(from_values({{0.3, 0.1}, {0.3, 0.1}, {0.3, 0.1}}));
    EXPECT_EQ(b.kind, BehaviorKind::FixedPoint);
    EXPECT_EQ(b.settle_step, 0u);
    EXPECT_FALSE(b.period);
}

TEST(Classify, SettleStepIsWhereSmallStepsBegin)
{
    std::vector<std::vector<double>> rows{{1.0}, {0.5}, {0.25}};
    for (int k = 0; k < 8; ++k) {
        rows.push_back({0.25 + 1e-9 * k});
    }
    const Behavior b = classify(from_values(rows));
    EXPECT_EQ(b.kind, BehaviorKind::FixedPoint);
    EXPECT_EQ(b.settle_step, 2u);
}

TEST(Classify, FixedPointNeedsFiveQuietSteps)
{
    std::vector<std::vector<double>> rows;
    for (int k = 0; k < 30; ++k) {
        rows.push_back({k % 2 == 0 ? 0.0 : 1.0});
    }
    // five values, four quiet steps
    for (int k = 0; k < 5; ++k) {
        rows.push_back({0.5 + 1e-8 * k});
    }
    EXPECT_NE(classify(from_values(rows)).kind, BehaviorKind::FixedPoint);
    rows.push_back({0.5 + 5e-8});
    EXPECT_EQ(classify(from_values(rows)).kind, BehaviorKind::FixedPoint);
}

TEST(Classify, PeriodTwoAndThree)
{
    std::vector<std::vector<double>> two;
    std::vector<std::vector<double>> three;
    for (int k = 0; k < 40; ++k) {
        two.push_back({k % 2 == 0 ? 0.1 : 0.9});
        three.push_back({0.1 * (k % 3)});
    }
    const Behavior b2 = classify(from_values(two));
    EXPECT_EQ(b2.kind, BehaviorKind::LimitCycle);
    EXPECT_EQ(b2.period, 2u);
    EXPECT_EQ(b2.settle_step, 0u);
    const Behavior b3 = classify(from_values(three));
    EXPECT_EQ(b3.kind, BehaviorKind::LimitCycle);
    EXPECT_EQ(b3.period, 3u);
}

TEST(Classify, CycleNeedsThreeFullPeriods)
{
    // five states: period 2 would need T >= 6
    const Behavior b = classify(from_values({{0.1}, {0.9}, {0.1}, {0.9}, {0.1}}));
    EXPECT_EQ(b.kind, BehaviorKind::Chaos);
}

TEST(Classify, LogisticMapIsChaos)
{
    std::vector<std::vector<double>> rows;
    double x = 0.123;
    for (int k = 0; k < 300; ++k) {
        rows.push_back({x});
        x = 4.0 * x * (1.0 - x);
    }
    const Behavior b = classify(from_values(rows));
    EXPECT_EQ(b.kind, BehaviorKind::Chaos);
    EXPECT_FALSE(b.period);
    EXPECT_FALSE(b.settle_step);
}

TEST(Classify, TooShortFails)
{
    EXPECT_THROW(classify(from_values({{0.1}})), InvalidArgument);
    EXPECT_THROW(classify(Trajectory{}), InvalidArgument);
}

TEST(Classify, TwoStateTrajectoryUsesShortWindow)
{
    EXPECT_EQ(classify(from_values({{0.1}, {0.1 + 1e-9}})).kind, BehaviorKind::FixedPoint);
    EXPECT_EQ(classify(from_values({{0.1}, {0.2}})).kind, BehaviorKind::Chaos);
}

TEST(Classify, HonoursCustomTolerances)
{
    const Trajectory t = from_values({{0.1}, {0.1001}, {0.1002}, {0.1003}, {0.1004}, {0.1005}});
    EXPECT_NE(classify(t).kind, BehaviorKind::FixedPoint);
    EXPECT_EQ(classify(t, {1e-3, 1e-6, 5}).kind, BehaviorKind::FixedPoint);
}
