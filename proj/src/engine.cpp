#include "greymap/engine.hpp"

#include "greymap/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fmt/format.h>
#include <string>

namespace greymap {

std::string_view to_string(Engine engine)
{
    switch (engine) {
    case Engine::Fcm:
        return "fcm";
    case Engine::Fgcm:
        return "fgcm";
    case Engine::Fggcm:
        return "fggcm";
    }
    return "?";
}

Engine parse_engine(std::string_view text)
{
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "fcm") {
        return Engine::Fcm;
    }
    if (lower == "fgcm") {
        return Engine::Fgcm;
    }
    if (lower == "fggcm") {
        return Engine::Fggcm;
    }
    throw InvalidArgument(fmt::format("unknown engine '{}'", text));
}

std::string_view to_string(BehaviorKind kind)
{
    switch (kind) {
    case BehaviorKind::FixedPoint:
        return "FixedPoint";
    case BehaviorKind::LimitCycle:
        return "LimitCycle";
    case BehaviorKind::Chaos:
        return "Chaos";
    }
    return "?";
}

GreyDomain default_state_domain(ActivationKind kind)
{
    return kind == ActivationKind::Sigmoid ? GreyDomain::unit() : GreyDomain::symmetric();
}

namespace {

bool all_crisp(std::span<const Ggn> values)
{
    return std::all_of(values.begin(), values.end(), [](const Ggn& g) { return g.is_crisp(); });
}

std::optional<Matrix<double>> crisp_weights_of(const Model& m)
{
    if (m.crisp_weights) {
        return m.crisp_weights;
    }
    if (all_crisp(m.weights.values())) {
        return m.weights.map([](const Ggn& g) { return g.kernel(); });
    }
    return std::nullopt;
}

std::optional<std::vector<double>> crisp_state_of(const Model& m)
{
    if (m.initial_crisp) {
        return m.initial_crisp;
    }
    if (all_crisp(m.initial_state)) {
        std::vector<double> out;
        out.reserve(m.initial_state.size());
        for (const auto& g : m.initial_state) {
            out.push_back(g.kernel());
        }
        return out;
    }
    return std::nullopt;
}

std::optional<std::vector<Interval>> interval_state_of(const Model& m)
{
    if (m.initial_intervals) {
        return m.initial_intervals;
    }
    if (auto crisp = crisp_state_of(m)) {
        std::vector<Interval> out;
        out.reserve(crisp->size());
        for (double x : *crisp) {
            out.push_back(Interval::point(x));
        }
        return out;
    }
    return std::nullopt;
}

void require_square(std::size_t rows, std::size_t cols, std::size_t n)
{
    if (rows != n || cols != n) {
        throw DimensionMismatch(fmt::format("{}x{} weights for a state of length {}", rows, cols, n));
    }
}

} // namespace

bool Model::supports(Engine engine) const
{
    switch (engine) {
    case Engine::Fcm:
        return crisp_weights_of(*this).has_value() && crisp_state_of(*this).has_value();
    case Engine::Fgcm:
        return interval_weights.has_value() && interval_state_of(*this).has_value();
    case Engine::Fggcm:
        return true;
    }
    return false;
}

void Model::validate() const
{
    const std::size_t n = initial_state.size();
    if (n == 0) {
        throw InvalidArgument("model needs at least one node");
    }
    require_square(weights.rows(), weights.cols(), n);
    if (interval_weights) {
        require_square(interval_weights->rows(), interval_weights->cols(), n);
    }
    if (crisp_weights) {
        require_square(crisp_weights->rows(), crisp_weights->cols(), n);
    }
    if (initial_intervals && initial_intervals->size() != n) {
        throw DimensionMismatch("interval initial state has the wrong length");
    }
    if (initial_crisp && initial_crisp->size() != n) {
        throw DimensionMismatch("crisp initial state has the wrong length");
    }
    if (max_steps < 2) {
        throw InvalidArgument("max_steps must be at least 2");
    }
    if (!(fp_tolerance > 0.0) || !(cycle_tolerance > 0.0)) {
        throw InvalidArgument("tolerances must be positive");
    }
}

std::vector<double> fcm_step(const Matrix<double>& weights, std::span<const double> state,
                             const Activation& act)
{
    require_square(weights.rows(), weights.cols(), state.size());
    std::vector<double> next(state.size());
    for (std::size_t i = 0; i < state.size(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < state.size(); ++j) {
            s += weights(i, j) * state[j];
        }
        next[i] = act(s);
    }
    return next;
}

std::vector<Interval> fgcm_step(const Matrix<Interval>& weights, std::span<const Interval> state,
                                const Activation& act)
{
    require_square(weights.rows(), weights.cols(), state.size());
    std::vector<Interval> next(state.size());
    for (std::size_t i = 0; i < state.size(); ++i) {
        Interval s = Interval::point(0.0);
        for (std::size_t j = 0; j < state.size(); ++j) {
            s = s + weights(i, j) * state[j];
        }
        next[i] = act(s);
    }
    return next;
}

GgnVector fggcm_step(const Matrix<Ggn>& weights, std::span<const Ggn> state, const Activation& act)
{
    require_square(weights.rows(), weights.cols(), state.size());
    GgnVector next(state.size());
    for (std::size_t i = 0; i < state.size(); ++i) {
        double s = 0.0;
        double den = 0.0;
        double num = 0.0;
        for (std::size_t j = 0; j < state.size(); ++j) {
            const Ggn& w = weights(i, j);
            const double product = w.kernel() * state[j].kernel();
            s += product;
            den += std::abs(product);
            num += std::max(w.greyness(), state[j].greyness()) * std::abs(product);
        }
        const double kernel = act(s);
        double greyness = state[i].greyness();
        if (den >= kGreynessGuard) {
            const double ratio = num / den;
            greyness = act.kind() == ActivationKind::Tanh ? ratio : kernel * ratio;
        }
        next[i] = Ggn(kernel, greyness);
    }
    return next;
}

namespace {

GgnVector as_grey(std::span<const double> xs)
{
    GgnVector out;
    out.reserve(xs.size());
    for (double x : xs) {
        out.push_back(Ggn::crisp(x));
    }
    return out;
}

GgnVector as_grey(std::span<const Interval> xs, const GreyDomain& domain)
{
    GgnVector out;
    out.reserve(xs.size());
    for (const auto& x : xs) {
        out.emplace_back(x.midpoint(), x.width() / domain.measure());
    }
    return out;
}

// Tracks step distances and decides when a run may stop early.
class StopRule {
public:
    StopRule(double tol, std::size_t needed) : tol_(tol), needed_(needed) {}

    bool settled(const GgnVector& prev, const GgnVector& next)
    {
        const double d = distance(prev, next);
        if (d == 0.0) {
            return true;
        }
        streak_ = d < tol_ ? streak_ + 1 : 0;
        return streak_ >= needed_;
    }

private:
    double tol_;
    std::size_t needed_;
    std::size_t streak_ = 0;
};

template <class State, class Step, class Convert>
void iterate(Trajectory& traj, State state, std::size_t max_steps, double tol, Step&& step,
             Convert&& convert)
{
    StopRule stop(tol, ClassifyOptions{}.confirmation_steps);
    traj.states.push_back(convert(state));
    for (std::size_t t = 0; t < max_steps; ++t) {
        state = step(state);
        traj.states.push_back(convert(state));
        if (stop.settled(traj.states[traj.states.size() - 2], traj.states.back())) {
            break;
        }
    }
}

} // namespace

Trajectory run(const Model& model, double lambda, Engine engine)
{
    model.validate();
    const Activation act = model.activation.with_lambda(lambda);

    Trajectory traj;
    traj.model = model.name;
    traj.engine = engine;
    traj.lambda = lambda;

    switch (engine) {
    case Engine::Fcm: {
        auto w = crisp_weights_of(model);
        auto a0 = crisp_state_of(model);
        if (!w || !a0) {
            throw UnsupportedEngine(fmt::format("model '{}' has grey weights or state; FCM needs a crisp form",
                                                model.name));
        }
        iterate(
            traj, *a0, model.max_steps, model.fp_tolerance,
            [&](const std::vector<double>& a) { return fcm_step(*w, a, act); },
            [](const std::vector<double>& a) { return as_grey(a); });
        break;
    }
    case Engine::Fgcm: {
        auto a0 = interval_state_of(model);
        if (!model.interval_weights || !a0) {
            throw UnsupportedEngine(fmt::format("model '{}' has no interval form; FGCM needs one", model.name));
        }
        const auto& w = *model.interval_weights;
        iterate(
            traj, *a0, model.max_steps, model.fp_tolerance,
            [&](const std::vector<Interval>& a) { return fgcm_step(w, a, act); },
            [&](const std::vector<Interval>& a) { return as_grey(a, model.state_domain); });
        break;
    }
    case Engine::Fggcm:
        iterate(
            traj, model.initial_state, model.max_steps, model.fp_tolerance,
            [&](const GgnVector& a) { return fggcm_step(model.weights, a, act); },
            [](const GgnVector& a) { return a; });
        break;
    }
    return traj;
}

Behavior classify(const Trajectory& trajectory, const ClassifyOptions& options)
{
    const auto& s = trajectory.states;
    if (s.size() < 2) {
        throw InvalidArgument("classification needs at least two states");
    }
    const std::size_t steps = s.size() - 1;

    std::vector<double> d(steps);
    for (std::size_t t = 0; t < steps; ++t) {
        d[t] = distance(s[t + 1], s[t]);
    }

    Behavior b;
    b.final_state = s.back();

    // An exact repeat of a deterministic map is stationary from then on.
    const std::size_t window = std::min(options.confirmation_steps, steps);
    const bool settled = d.back() == 0.0 ||
                         std::all_of(d.end() - static_cast<std::ptrdiff_t>(window), d.end(),
                                     [&](double x) { return x < options.fp_tolerance; });
    if (settled) {
        std::size_t t = steps;
        while (t > 0 && d[t - 1] < options.fp_tolerance) {
            --t;
        }
        b.kind = BehaviorKind::FixedPoint;
        b.settle_step = t;
        return b;
    }

    for (std::size_t period = 2; 3 * period <= steps; ++period) {
        auto returns = [&](std::size_t t) { return distance(s[t + period], s[t]) < options.cycle_tolerance; };
        bool periodic = true;
        for (std::size_t t = steps - 3 * period; t + period <= steps; ++t) {
            if (!returns(t)) {
                periodic = false;
                break;
            }
        }
        if (periodic) {
            std::size_t t = steps - 3 * period;
            while (t > 0 && returns(t - 1)) {
                --t;
            }
            b.kind = BehaviorKind::LimitCycle;
            b.period = period;
            b.settle_step = t;
            return b;
        }
    }

    b.kind = BehaviorKind::Chaos;
    return b;
}

} // namespace greymap
