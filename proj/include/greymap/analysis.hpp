#pragma once

#include "greymap/activation.hpp"
#include "greymap/engine.hpp"
#include "greymap/grey.hpp"
#include "greymap/matrix.hpp"

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace greymap {

enum class VerdictKind { UniqueFixedPoint, AtLeastOneFixedPoint, Inconclusive };

std::string_view to_string(VerdictKind kind);

// Width of the equality band around a threshold.
inline constexpr double kEqTolerance = 1e-9;
// Row sums below this (the smallest normal double) make a ratio row
// degenerate. The ratios are scale-free, so tiny kernels are still usable.
inline constexpr double kDegenerateRowSum = std::numeric_limits<double>::min();
// Greyness differences this small count as ties when gating m_tilde.
inline constexpr double kGateTolerance = 1e-12;

struct ConditionVerdict {
    VerdictKind kind = VerdictKind::Inconclusive;
    double lhs = 0.0;
    double threshold = 0.0;
    double margin = 0.0; // threshold - lhs

    friend bool operator==(const ConditionVerdict&, const ConditionVerdict&) = default;
};

// Unique below threshold - eq_tol, at-least-one within eq_tol of it,
// inconclusive above.
ConditionVerdict compare_to_threshold(double lhs, double threshold, double eq_tol = kEqTolerance);

// 1 for x >= 0, else 0.
double heaviside(double x) noexcept;

double frobenius(const Matrix<double>& m);

Matrix<double> kernels(const Matrix<Ggn>& w);

// Crisp map: ||W||_F against 4/lambda (sigmoid) or 1/lambda (tanh).
ConditionVerdict fcm_condition(const Matrix<double>& w, const Activation& act);
// Same bound on the kernel matrix of a grey map.
ConditionVerdict kernel_condition(const Matrix<double>& w_hat, const Activation& act);

// |lower| for nonpositive intervals, upper for nonnegative ones.
// Throws SpansZero on the first entry with lower < 0 < upper.
Matrix<double> w_star(const Matrix<Interval>& w);

// Interval map: ||W*||_F against the same thresholds. Throws SpansZero.
ConditionVerdict fgcm_condition(const Matrix<Interval>& w, const Activation& act);

struct MTilde {
    Matrix<double> matrix;
    // rows whose weighted kernel sum vanished; left as zeros
    std::vector<std::size_t> zero_rows;
};

// m~_ij = |A_j w_ij| theta(A_j° - w_ij°) / sum_j |w_ij A_j|, scaled by A_i
// under sigmoid. Ties within kGateTolerance open the gate.
MTilde m_tilde(const Matrix<Ggn>& w, std::span<const Ggn> state, const Activation& act);

// lhs = ||m_tilde||_F against 1.
ConditionVerdict greyness_condition(const Matrix<double>& m_tilde);

// m_ij = |w_ij A_j| / sum_j |w_ij A_j|, scaled by next_kernels[i] under
// sigmoid. Throws DegenerateRow when a row sum vanishes.
Matrix<double> m_matrix(const Matrix<Ggn>& w, std::span<const Ggn> state,
                        std::span<const double> next_kernels, const Activation& act);

// ||M g - g||_2. Throws DimensionMismatch.
double tanh_grey_fixed_point_residual(const Matrix<double>& m, std::span<const double> grey);

struct ConvergenceReport {
    std::string model;
    double lambda = 0.0;
    Engine engine = Engine::Fggcm;
    double frobenius_kernel = 0.0;
    std::optional<double> w_star_frobenius;
    // Bound for the engine that ran; absent when it cannot be formed.
    std::optional<ConditionVerdict> kernel_verdict;
    std::optional<double> m_tilde_frobenius;
    std::optional<ConditionVerdict> greyness_verdict;
    // tanh grey maps that settled: ||M g - g|| at the final state
    std::optional<double> grey_residual;
    Behavior behavior;
    std::vector<std::string> notes;
};

// Runs the model, classifies the trajectory and evaluates every bound that
// applies to the engine at the final state.
ConvergenceReport full_report(const Model& model, double lambda, Engine engine);

// One key=value pair per line.
std::string to_key_value(const ConvergenceReport& report);

std::string report_csv_header();
// Absent values print as '-'.
std::string to_csv_row(const ConvergenceReport& report, int decimals = 4);

} // namespace greymap
