#include "greymap/analysis.hpp"

#include "greymap/error.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace greymap {

std::string_view to_string(VerdictKind kind)
{
    switch (kind) {
    case VerdictKind::UniqueFixedPoint:
        return "UniqueFixedPoint";
    case VerdictKind::AtLeastOneFixedPoint:
        return "AtLeastOneFixedPoint";
    case VerdictKind::Inconclusive:
        return "Inconclusive";
    }
    return "?";
}

ConditionVerdict compare_to_threshold(double lhs, double threshold, double eq_tol)
{
    ConditionVerdict v;
    v.lhs = lhs;
    v.threshold = threshold;
    v.margin = threshold - lhs;
    if (std::abs(lhs - threshold) <= eq_tol) {
        v.kind = VerdictKind::AtLeastOneFixedPoint;
    } else if (lhs < threshold) {
        v.kind = VerdictKind::UniqueFixedPoint;
    } else {
        v.kind = VerdictKind::Inconclusive;
    }
    return v;
}

double heaviside(double x) noexcept
{
    return x >= 0.0 ? 1.0 : 0.0;
}

double frobenius(const Matrix<double>& m)
{
    double sum = 0.0;
    for (double x : m.values()) {
        sum += x * x;
    }
    return std::sqrt(sum);
}

Matrix<double> kernels(const Matrix<Ggn>& w)
{
    return w.map([](const Ggn& g) { return g.kernel(); });
}

ConditionVerdict fcm_condition(const Matrix<double>& w, const Activation& act)
{
    return compare_to_threshold(frobenius(w), act.contraction_threshold());
}

ConditionVerdict kernel_condition(const Matrix<double>& w_hat, const Activation& act)
{
    return compare_to_threshold(frobenius(w_hat), act.contraction_threshold());
}

Matrix<double> w_star(const Matrix<Interval>& w)
{
    Matrix<double> out(w.rows(), w.cols());
    for (std::size_t i = 0; i < w.rows(); ++i) {
        for (std::size_t j = 0; j < w.cols(); ++j) {
            const Interval& iv = w(i, j);
            if (iv.spans_zero()) {
                throw SpansZero(i, j);
            }
            out(i, j) = iv.upper() <= 0.0 ? std::abs(iv.lower()) : iv.upper();
        }
    }
    return out;
}

ConditionVerdict fgcm_condition(const Matrix<Interval>& w, const Activation& act)
{
    return compare_to_threshold(frobenius(w_star(w)), act.contraction_threshold());
}

namespace {

void check_shape(const Matrix<Ggn>& w, std::size_t n)
{
    if (w.rows() != n || w.cols() != n) {
        throw DimensionMismatch(fmt::format("{}x{} weights for a state of length {}", w.rows(), w.cols(), n));
    }
}

double row_denominator(const Matrix<Ggn>& w, std::span<const Ggn> state, std::size_t i)
{
    double den = 0.0;
    for (std::size_t j = 0; j < state.size(); ++j) {
        den += std::abs(w(i, j).kernel() * state[j].kernel());
    }
    return den;
}

} // namespace

MTilde m_tilde(const Matrix<Ggn>& w, std::span<const Ggn> state, const Activation& act)
{
    const std::size_t n = state.size();
    check_shape(w, n);
    MTilde out{Matrix<double>(n, n), {}};
    for (std::size_t i = 0; i < n; ++i) {
        const double den = row_denominator(w, state, i);
        if (den < kDegenerateRowSum) {
            out.zero_rows.push_back(i);
            continue;
        }
        const double scale = act.kind() == ActivationKind::Sigmoid ? state[i].kernel() : 1.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double diff = state[j].greyness() - w(i, j).greyness();
            const double gate = std::abs(diff) <= kGateTolerance ? 1.0 : heaviside(diff);
            out.matrix(i, j) = scale * std::abs(state[j].kernel() * w(i, j).kernel()) * gate / den;
        }
    }
    return out;
}

ConditionVerdict greyness_condition(const Matrix<double>& m_tilde)
{
    return compare_to_threshold(frobenius(m_tilde), 1.0);
}

Matrix<double> m_matrix(const Matrix<Ggn>& w, std::span<const Ggn> state,
                        std::span<const double> next_kernels, const Activation& act)
{
    const std::size_t n = state.size();
    check_shape(w, n);
    if (next_kernels.size() != n) {
        throw DimensionMismatch("next kernels have the wrong length");
    }
    Matrix<double> m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const double den = row_denominator(w, state, i);
        if (den < kDegenerateRowSum) {
            throw DegenerateRow(i);
        }
        const double scale = act.kind() == ActivationKind::Sigmoid ? next_kernels[i] : 1.0;
        for (std::size_t j = 0; j < n; ++j) {
            m(i, j) = scale * std::abs(w(i, j).kernel() * state[j].kernel()) / den;
        }
    }
    return m;
}

double tanh_grey_fixed_point_residual(const Matrix<double>& m, std::span<const double> grey)
{
    if (m.rows() != grey.size() || m.cols() != grey.size()) {
        throw DimensionMismatch("residual needs a square matrix matching the greyness vector");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double mg = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            mg += m(i, j) * grey[j];
        }
        const double r = mg - grey[i];
        sum += r * r;
    }
    return std::sqrt(sum);
}

namespace {

// True when every contributing weight is at most as grey as its source node.
bool node_greyness_dominates(const Matrix<Ggn>& w, std::span<const Ggn> state)
{
    for (std::size_t i = 0; i < w.rows(); ++i) {
        for (std::size_t j = 0; j < w.cols(); ++j) {
            const bool contributes = w(i, j).kernel() * state[j].kernel() != 0.0;
            if (contributes && w(i, j).greyness() > state[j].greyness() + kGateTolerance) {
                return false;
            }
        }
    }
    return true;
}

void add_greyness_analysis(ConvergenceReport& r, const Model& model, const Activation& act,
                           const GgnVector& final_state)
{
    const MTilde mt = m_tilde(model.weights, final_state, act);
    r.m_tilde_frobenius = frobenius(mt.matrix);
    r.greyness_verdict = greyness_condition(mt.matrix);
    for (std::size_t row : mt.zero_rows) {
        r.notes.push_back(fmt::format("m_tilde row {} has a vanishing kernel sum and was left at zero", row));
    }

    switch (r.behavior.kind) {
    case BehaviorKind::FixedPoint:
        break;
    case BehaviorKind::LimitCycle:
        r.notes.push_back("kernel did not converge: greyness verdict is not certified");
        r.notes.push_back("m_tilde taken at the last state of the cycle; its value depends on the phase");
        break;
    case BehaviorKind::Chaos:
        r.notes.push_back("kernel did not converge: greyness verdict is not certified");
        break;
    }

    if (act.kind() != ActivationKind::Tanh || r.behavior.kind != BehaviorKind::FixedPoint) {
        return;
    }
    std::vector<double> next_kernels;
    std::vector<double> grey;
    for (const auto& g : final_state) {
        next_kernels.push_back(g.kernel());
        grey.push_back(g.greyness());
    }
    try {
        const Matrix<double> m = m_matrix(model.weights, final_state, next_kernels, act);
        r.grey_residual = tanh_grey_fixed_point_residual(m, grey);
        if (!node_greyness_dominates(model.weights, final_state)) {
            r.notes.push_back("some weight is greyer than its source node; the M residual is indicative only");
        }
        if (r.greyness_verdict->kind == VerdictKind::Inconclusive) {
            r.notes.push_back("m_tilde bound not met; M keeps eigenvalue 1, so the greyness has at least one fixed point");
        }
    } catch (const DegenerateRow& e) {
        r.notes.push_back(fmt::format("M not formed: {}", e.what()));
    }
}

} // namespace

ConvergenceReport full_report(const Model& model, double lambda, Engine engine)
{
    const Trajectory traj = run(model, lambda, engine);
    const Activation act = model.activation.with_lambda(lambda);

    ConvergenceReport r;
    r.model = model.name;
    r.lambda = lambda;
    r.engine = engine;
    r.behavior = classify(traj, {model.fp_tolerance, model.cycle_tolerance, ClassifyOptions{}.confirmation_steps});

    const Matrix<double> w_hat = kernels(model.weights);
    r.frobenius_kernel = frobenius(w_hat);

    std::optional<ConditionVerdict> interval_verdict;
    if (model.interval_weights) {
        try {
            r.w_star_frobenius = frobenius(w_star(*model.interval_weights));
            interval_verdict = compare_to_threshold(*r.w_star_frobenius, act.contraction_threshold());
        } catch (const SpansZero& e) {
            r.notes.push_back(fmt::format("W* unavailable: {}", e.what()));
        }
    }

    switch (engine) {
    case Engine::Fcm:
        r.kernel_verdict = fcm_condition(model.crisp_weights ? *model.crisp_weights : w_hat, act);
        break;
    case Engine::Fgcm:
        r.kernel_verdict = interval_verdict;
        if (!interval_verdict) {
            r.notes.push_back("interval bound cannot be evaluated for this map");
        }
        break;
    case Engine::Fggcm:
        r.kernel_verdict = kernel_condition(w_hat, act);
        add_greyness_analysis(r, model, act, traj.final_state());
        break;
    }
    return r;
}

namespace {

std::string opt_number(const std::optional<double>& x, int decimals)
{
    return x ? fmt::format("{:.{}f}", *x, decimals) : std::string("-");
}

std::string opt_verdict(const std::optional<ConditionVerdict>& v)
{
    return v ? std::string(to_string(v->kind)) : std::string("-");
}

std::string opt_count(const std::optional<std::size_t>& x)
{
    return x ? std::to_string(*x) : std::string("-");
}

} // namespace

std::string to_key_value(const ConvergenceReport& r)
{
    constexpr int digits = 12;
    auto g = [](double x) { return fmt::format("{:.12g}", x); };
    auto og = [&](const std::optional<double>& x) { return x ? g(*x) : std::string("-"); };

    std::string out;
    auto put = [&out](std::string_view key, std::string_view value) {
        out += fmt::format("{}={}\n", key, value);
    };
    put("model", r.model);
    put("lambda", g(r.lambda));
    put("engine", to_string(r.engine));
    put("frobenius_kernel", g(r.frobenius_kernel));
    put("w_star_frobenius", og(r.w_star_frobenius));
    put("kernel_verdict", opt_verdict(r.kernel_verdict));
    if (r.kernel_verdict) {
        put("kernel_lhs", g(r.kernel_verdict->lhs));
        put("kernel_threshold", g(r.kernel_verdict->threshold));
        put("kernel_margin", g(r.kernel_verdict->margin));
    }
    put("m_tilde_frobenius", og(r.m_tilde_frobenius));
    put("greyness_verdict", opt_verdict(r.greyness_verdict));
    if (r.greyness_verdict) {
        put("greyness_margin", g(r.greyness_verdict->margin));
    }
    put("grey_residual", og(r.grey_residual));
    put("behavior", to_string(r.behavior.kind));
    put("settle_step", opt_count(r.behavior.settle_step));
    put("period", opt_count(r.behavior.period));
    for (std::size_t i = 0; i < r.behavior.final_state.size(); ++i) {
        const Ggn& s = r.behavior.final_state[i];
        put(fmt::format("final.{}", i + 1), fmt::format("{:.{}g},{:.{}g}", s.kernel(), digits, s.greyness(), digits));
    }
    for (const auto& note : r.notes) {
        put("note", note);
    }
    return out;
}

std::string report_csv_header()
{
    return "lambda,norm_kernel,norm_wstar,lhs_times_lambda,kernel_verdict,mtilde_norm,greyness_verdict,behavior";
}

std::string to_csv_row(const ConvergenceReport& r, int decimals)
{
    std::optional<double> scaled;
    if (r.kernel_verdict) {
        scaled = r.kernel_verdict->lhs * r.lambda;
    }
    return fmt::format("{:g},{:.{}f},{},{},{},{},{},{}", r.lambda, r.frobenius_kernel, decimals,
                       opt_number(r.w_star_frobenius, decimals), opt_number(scaled, decimals),
                       opt_verdict(r.kernel_verdict), opt_number(r.m_tilde_frobenius, decimals),
                       opt_verdict(r.greyness_verdict), to_string(r.behavior.kind));
}

} // namespace greymap
