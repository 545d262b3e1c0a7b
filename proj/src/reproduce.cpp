#include "greymap/reproduce.hpp"

#include "greymap/analysis.hpp"
#include "greymap/error.hpp"

#include <algorithm>
#include <cctype>
#include <fmt/format.h>

namespace greymap {

std::string_view to_string(Table table)
{
    switch (table) {
    case Table::T2:
        return "T2";
    case Table::T4:
        return "T4";
    case Table::T5:
        return "T5";
    case Table::T6:
        return "T6";
    case Table::Behaviors:
        return "behaviors";
    }
    return "?";
}

Table parse_table(std::string_view text)
{
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    for (Table t : {Table::T2, Table::T4, Table::T5, Table::T6, Table::Behaviors}) {
        std::string name(to_string(t));
        std::transform(name.begin(), name.end(), name.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (name == lower) {
            return t;
        }
    }
    throw InvalidArgument(fmt::format("unknown table '{}'", text));
}

namespace {

bool is_web(ScenarioId id)
{
    return id == ScenarioId::Web || id == ScenarioId::WebCase1 || id == ScenarioId::WebCase2;
}

NormRow scaled(std::string label, double norm, std::span<const double> lambdas)
{
    NormRow row{std::move(label), {}};
    for (double l : lambdas) {
        row.values.push_back(norm * l);
    }
    return row;
}

} // namespace

std::vector<NormRow> norm_rows(ScenarioId family)
{
    const bool web = is_web(family);
    const std::string tag = web ? "web" : "civil";
    const Model base = builtin(web ? ScenarioId::Web : ScenarioId::Civil);
    const Model case1 = builtin(web ? ScenarioId::WebCase1 : ScenarioId::CivilCase1);
    const Model case2 = builtin(web ? ScenarioId::WebCase2 : ScenarioId::CivilCase2);
    const auto& l = base.lambda_sweep;
    return {
        scaled("W_" + tag, frobenius(*base.crisp_weights), l),
        scaled("W*_" + tag, frobenius(w_star(*base.interval_weights)), l),
        scaled("W_hat_" + tag, frobenius(kernels(base.weights)), l),
        scaled("W_hat_" + tag + "1", frobenius(kernels(case1.weights)), l),
        scaled("W_hat_" + tag + "_mc", frobenius(kernels(case2.weights)), l),
    };
}

std::vector<double> m_tilde_row(ScenarioId family, bool parallel)
{
    const Model m = builtin(is_web(family) ? ScenarioId::Web : ScenarioId::Civil);
    return sweep(
        m.lambda_sweep, [&m](double l) { return full_report(m, l, Engine::Fggcm).m_tilde_frobenius.value(); },
        parallel);
}

std::vector<BehaviorRow> behavior_rows(bool parallel)
{
    std::vector<BehaviorRow> rows;
    for (ScenarioId id : {ScenarioId::Web, ScenarioId::Civil}) {
        const Model m = builtin(id);
        auto part = sweep(
            m.lambda_sweep,
            [&m](double l) {
                BehaviorRow row{m.name, l, {}};
                for (Engine e : {Engine::Fcm, Engine::Fgcm, Engine::Fggcm}) {
                    row.behaviors[static_cast<std::size_t>(e)] = classify(run(m, l, e));
                }
                return row;
            },
            parallel);
        rows.insert(rows.end(), part.begin(), part.end());
    }
    return rows;
}

namespace {

std::string lambda_header(std::string_view first, std::span<const double> lambdas)
{
    std::string out(first);
    for (double l : lambdas) {
        out += fmt::format(",lambda={:g}", l);
    }
    return out + "\n";
}

std::string numbers(std::span<const double> xs)
{
    std::string out;
    for (double x : xs) {
        out += fmt::format(",{:.4f}", x);
    }
    return out;
}

std::string describe(const Behavior& b)
{
    if (b.kind == BehaviorKind::LimitCycle && b.period) {
        return fmt::format("{}(P={})", to_string(b.kind), *b.period);
    }
    return std::string(to_string(b.kind));
}

} // namespace

std::string reproduce(Table table, bool parallel)
{
    switch (table) {
    case Table::T2:
    case Table::T4: {
        const ScenarioId family = table == Table::T2 ? ScenarioId::Web : ScenarioId::Civil;
        std::string out = lambda_header("matrix", builtin(family).lambda_sweep);
        for (const auto& row : norm_rows(family)) {
            out += row.label + numbers(row.values) + "\n";
        }
        return out;
    }
    case Table::T5:
    case Table::T6: {
        const ScenarioId family = table == Table::T5 ? ScenarioId::Web : ScenarioId::Civil;
        std::string out = lambda_header("quantity", builtin(family).lambda_sweep);
        out += "M_tilde_F" + numbers(m_tilde_row(family, parallel)) + "\n";
        return out;
    }
    case Table::Behaviors: {
        std::string out = "scenario,lambda,fcm,fgcm,fggcm\n";
        for (const auto& row : behavior_rows(parallel)) {
            out += fmt::format("{},{:g},{},{},{}\n", row.scenario, row.lambda, describe(row.behaviors[0]),
                               describe(row.behaviors[1]), describe(row.behaviors[2]));
        }
        return out;
    }
    }
    return {};
}

} // namespace greymap
