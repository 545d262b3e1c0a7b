#include "greymap/scenarios.hpp"

#include "greymap/error.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace greymap {

std::string_view to_string(ScenarioId id)
{
    switch (id) {
    case ScenarioId::Web:
        return "web";
    case ScenarioId::WebCase1:
        return "web-case1";
    case ScenarioId::WebCase2:
        return "web-case2";
    case ScenarioId::Civil:
        return "civil";
    case ScenarioId::CivilCase1:
        return "civil-case1";
    case ScenarioId::CivilCase2:
        return "civil-case2";
    }
    return "?";
}

ScenarioId parse_scenario(std::string_view text)
{
    for (ScenarioId id : kAllScenarios) {
        if (to_string(id) == text) {
            return id;
        }
    }
    throw InvalidArgument(fmt::format("unknown scenario '{}'", text));
}

Matrix<double> web_crisp_weights()
{
    return {
        {0.0, -0.9, -0.88, 1.0, -0.85, -0.83, 1.0},
        {1.0, 0.0, -0.93, -0.89, -0.9, -0.94, 1.0},
        {-0.98, -0.93, -1.0, -1.0, 1.0, 1.0, 1.0},
        {-0.99, -0.89, -1.0, -0.39, 0.73, 0.58, 0.7},
        {1.0, 1.0, 1.0, 1.0, -0.8, 0.51, 1.0},
        {1.0, 1.0, 0.83, 1.0, 0.51, -0.39, 1.0},
        {1.0, 1.0, 1.0, 1.0, -0.71, -0.49, -0.67},
    };
}

Matrix<double> civil_crisp_weights()
{
    auto w = Matrix<double>::square(7);
    struct Edge {
        std::size_t i, j;
        double value;
    };
    // 1-based, as the concepts are numbered
    constexpr Edge edges[] = {
        {1, 2, 0.1}, {1, 6, -0.3}, {2, 3, 0.7}, {3, 1, 0.6},  {4, 1, 0.9},
        {5, 3, 0.9}, {6, 5, -0.9}, {6, 7, 0.8}, {7, 4, 0.9}, {7, 5, -0.9},
    };
    for (const auto& e : edges) {
        w(e.i - 1, e.j - 1) = e.value;
    }
    return w;
}

Matrix<Interval> inject_greyness(const Matrix<double>& w, double g, const GreyDomain& domain)
{
    if (!std::isfinite(g) || !(g > 0.0)) {
        throw InvalidArgument(fmt::format("greyness half-width must be positive, got {}", g));
    }
    return w.map([&](double x) {
        if (std::abs(x) < g) {
            return Interval::point(x);
        }
        return Interval(std::max(x - g, domain.lower()), std::min(x + g, domain.upper()));
    });
}

std::vector<Interval> inject_greyness(std::span<const double> values, double g, const GreyDomain& domain)
{
    Matrix<double> row(1, values.size());
    std::copy(values.begin(), values.end(), row.row(0).begin());
    const auto injected = inject_greyness(row, g, domain);
    return {injected.values().begin(), injected.values().end()};
}

namespace {

struct Replacement {
    std::size_t i, j; // 1-based
    std::vector<Interval> intervals;
};

Model grey_model(std::string name, const Matrix<double>& crisp, ActivationKind kind,
                 std::vector<double> initial, std::vector<double> sweep)
{
    Model m;
    m.name = std::move(name);
    m.activation = Activation(kind, 1.0);
    m.weight_domain = GreyDomain::symmetric();
    m.state_domain = default_state_domain(kind);

    auto iw = inject_greyness(crisp, kBuiltinGreyness, m.weight_domain);
    m.weights = iw.map([&](const Interval& iv) { return ggn_from_interval(iv, m.weight_domain); });
    m.interval_weights = std::move(iw);
    m.crisp_weights = crisp;

    auto ivs = inject_greyness(initial, kBuiltinGreyness, m.state_domain);
    for (const auto& iv : ivs) {
        m.initial_state.push_back(ggn_from_interval(iv, m.state_domain));
    }
    m.initial_intervals = std::move(ivs);
    m.initial_crisp = std::move(initial);
    m.lambda_sweep = std::move(sweep);
    return m;
}

// Case 1: one weight straddles zero, so only grey and interval forms remain.
void straddle_first_weight(Model& m)
{
    const Interval iv(-0.1, 0.1);
    m.interval_weights->operator()(0, 0) = iv;
    m.weights(0, 0) = ggn_from_interval(iv, m.weight_domain);
    m.crisp_weights.reset();
}

// Case 2: multi-interval weights leave the grey form as the only one.
void use_unions(Model& m, const std::vector<Replacement>& reps)
{
    for (const auto& r : reps) {
        m.weights(r.i - 1, r.j - 1) = ggn_from_intervals(r.intervals, m.weight_domain);
    }
    m.interval_weights.reset();
    m.crisp_weights.reset();
}

Model web()
{
    return grey_model("web", web_crisp_weights(), ActivationKind::Sigmoid, {1, 1, 1, 1, 1, 1, 0},
                      {0.5, 1.0, 2.0, 4.0});
}

Model civil()
{
    return grey_model("civil", civil_crisp_weights(), ActivationKind::Tanh, {0.8, 0.5, 0.3, 0, 0, 0, 0},
                      {0.2, 0.4, 1.5, 2.5});
}

} // namespace

Model builtin(ScenarioId id)
{
    Model m = id == ScenarioId::Web || id == ScenarioId::WebCase1 || id == ScenarioId::WebCase2 ? web() : civil();
    m.name = std::string(to_string(id));
    switch (id) {
    case ScenarioId::Web:
    case ScenarioId::Civil:
        break;
    case ScenarioId::WebCase1:
    case ScenarioId::CivilCase1:
        straddle_first_weight(m);
        break;
    case ScenarioId::WebCase2:
        use_unions(m, {
                          {1, 1, {{-0.9, -0.75}, {0.4, 0.9}}},
                          {1, 2, {{-0.95, -0.89}, Interval::point(-0.83), {-0.8, -0.75}}},
                          {3, 3, {{-1.0, -0.95}, {-0.94, -0.90}, {-0.89, 0.88}}},
                          {1, 5, {{0.99, 1.0}, {0.95, 0.98}, {-0.90, 0.93}}},
                      });
        break;
    case ScenarioId::CivilCase2:
        use_unions(m, {
                          {1, 1, {{-0.1, 0.1}}},
                          {1, 2, {{0.07, 0.08}, {0.09, 0.11}, {0.13, 0.15}}},
                          {2, 3, {{0.65, 0.68}, {0.685, 0.715}, Interval::point(0.72), {0.725, 0.73}}},
                          {6, 5, {{-0.97, -0.93}, {-0.92, -0.88}, {-0.85, -0.8}}},
                      });
        break;
    }
    return m;
}

} // namespace greymap
