#pragma once

#include "greymap/activation.hpp"
#include "greymap/grey.hpp"
#include "greymap/matrix.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace greymap {

enum class Engine { Fcm, Fgcm, Fggcm };

std::string_view to_string(Engine engine);
// Accepts "fcm", "fgcm" and "fggcm" (case-insensitive).
Engine parse_engine(std::string_view text);

// A cognitive map together with the experiment knobs needed to run it.
//
// The grey weight matrix drives FGGCM inference. Interval and crisp forms are
// optional companions: FGCM inference needs the interval form, FCM inference
// uses the crisp form when present and otherwise the kernels of a grey map
// whose greynesses are all zero.
struct Model {
    std::string name;
    Activation activation{ActivationKind::Sigmoid, 1.0};
    GreyDomain weight_domain = GreyDomain::symmetric();
    GreyDomain state_domain = GreyDomain::unit();

    Matrix<Ggn> weights;
    std::optional<Matrix<Interval>> interval_weights;
    std::optional<Matrix<double>> crisp_weights;

    GgnVector initial_state;
    std::optional<std::vector<Interval>> initial_intervals;
    std::optional<std::vector<double>> initial_crisp;

    std::size_t max_steps = 300;
    double fp_tolerance = 1e-6;
    double cycle_tolerance = 1e-6;
    // Slope values this map is usually studied at; informational.
    std::vector<double> lambda_sweep;

    std::size_t size() const noexcept { return initial_state.size(); }
    bool supports(Engine engine) const;

    // Throws InvalidArgument/DimensionMismatch when the invariants break.
    void validate() const;

    friend bool operator==(const Model&, const Model&) = default;
};

// Default grey domain for node states under the given activation.
GreyDomain default_state_domain(ActivationKind kind);

struct Trajectory {
    std::string model;
    Engine engine = Engine::Fggcm;
    double lambda = 0.0;
    // states[0] is the initial state. FGCM states are stored as
    // (midpoint, width / measure(state domain)).
    std::vector<GgnVector> states;

    std::size_t steps() const noexcept { return states.empty() ? 0 : states.size() - 1; }
    const GgnVector& final_state() const { return states.back(); }
};

enum class BehaviorKind { FixedPoint, LimitCycle, Chaos };

std::string_view to_string(BehaviorKind kind);

struct Behavior {
    BehaviorKind kind = BehaviorKind::Chaos;
    std::optional<std::size_t> settle_step;
    std::optional<std::size_t> period;
    GgnVector final_state;
};

struct ClassifyOptions {
    double fp_tolerance = 1e-6;
    double cycle_tolerance = 1e-6;
    // consecutive sub-tolerance steps needed to call a fixed point
    std::size_t confirmation_steps = 5;
};

// A' = f(W A).
std::vector<double> fcm_step(const Matrix<double>& weights, std::span<const double> state,
                             const Activation& act);

// A'_i = f(sum_j w_ij * A_j) in interval arithmetic.
std::vector<Interval> fgcm_step(const Matrix<Interval>& weights, std::span<const Interval> state,
                                const Activation& act);

// Below this weighted kernel sum a node keeps its previous greyness.
inline constexpr double kGreynessGuard = 1e-12;

// Kernels follow the crisp rule. Node greyness is the grey ratio
//   r_i = sum_j max(w_ij°, A_j°) |w_ij A_j| / sum_j |w_ij A_j|
// (kernels only inside |.|), scaled by the new kernel under sigmoid.
GgnVector fggcm_step(const Matrix<Ggn>& weights, std::span<const Ggn> state, const Activation& act);

// Iterates the requested engine from the model's initial state with slope
// lambda. Stops early once a fixed point is confirmed (or the state repeats
// exactly), otherwise after model.max_steps steps.
// Throws UnsupportedEngine when the model lacks the form the engine needs.
Trajectory run(const Model& model, double lambda, Engine engine);

// Fixed point if the last confirmation_steps step distances are all below
// fp_tolerance; otherwise limit cycle if some period P in [2, T/3] returns
// within cycle_tolerance over the last three periods; otherwise chaos.
// Throws InvalidArgument for trajectories with fewer than two states.
Behavior classify(const Trajectory& trajectory, const ClassifyOptions& options = {});

} // namespace greymap
