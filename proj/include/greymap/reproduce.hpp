#pragma once

#include "greymap/engine.hpp"
#include "greymap/scenarios.hpp"

#include <array>
#include <functional>
#include <future>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace greymap {

enum class Table { T2, T4, T5, T6, Behaviors };

std::string_view to_string(Table table);
// "T2", "T4", "T5", "T6" or "behaviors" (case-insensitive)
Table parse_table(std::string_view text);

struct NormRow {
    std::string label;
    std::vector<double> values; // ||.||_F * lambda, one per slope
};

struct BehaviorRow {
    std::string scenario;
    double lambda = 0.0;
    // indexed by Engine: fcm, fgcm, fggcm
    std::array<Behavior, 3> behaviors;
};

// Rows W, W*, W_hat, W_hat (case 1), W_hat (case 2) for the web or civil family.
std::vector<NormRow> norm_rows(ScenarioId family);
// ||m_tilde||_F of the grey map at each slope of its sweep.
std::vector<double> m_tilde_row(ScenarioId family, bool parallel = false);
// All three engines at every slope of both base maps.
std::vector<BehaviorRow> behavior_rows(bool parallel = false);

// CSV in the row/column order of the printed tables, 4 decimals.
std::string reproduce(Table table, bool parallel = false);

// Evaluates fn for every slope, optionally on separate threads. Results come
// back in slope order either way.
template <class F>
auto sweep(std::span<const double> lambdas, F&& fn, bool parallel) -> std::vector<decltype(fn(0.0))>
{
    using R = decltype(fn(0.0));
    std::vector<R> out;
    out.reserve(lambdas.size());
    if (!parallel) {
        for (double l : lambdas) {
            out.push_back(fn(l));
        }
        return out;
    }
    std::vector<std::future<R>> jobs;
    jobs.reserve(lambdas.size());
    for (double l : lambdas) {
        jobs.push_back(std::async(std::launch::async, [&fn, l] { return fn(l); }));
    }
    for (auto& job : jobs) {
        out.push_back(job.get());
    }
    return out;
}

} // namespace greymap
