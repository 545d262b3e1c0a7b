#include "greymap/cli.hpp"

#include "greymap/analysis.hpp"
#include "greymap/error.hpp"
#include "greymap/reproduce.hpp"
#include "greymap/scenarios.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fmt/format.h>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>

namespace greymap::cli {

std::string trace_csv(const Trajectory& trajectory)
{
    std::string out = "step,node,kernel,greyness\n";
    for (std::size_t t = 0; t < trajectory.states.size(); ++t) {
        const auto& state = trajectory.states[t];
        for (std::size_t i = 0; i < state.size(); ++i) {
            out += fmt::format("{},{},{:.12g},{:.12g}\n", t, i + 1, state[i].kernel(), state[i].greyness());
        }
    }
    return out;
}

std::string behavior_line(const Behavior& b)
{
    auto opt = [](const std::optional<std::size_t>& x) { return x ? std::to_string(*x) : std::string("-"); };
    return fmt::format("behavior={} settle_step={} period={}", to_string(b.kind), opt(b.settle_step), opt(b.period));
}

namespace {

struct Source {
    std::string model_path;
    std::string scenario;
};

void add_source(CLI::App* cmd, Source& src)
{
    auto* group = cmd->add_option_group("source", "where the map comes from");
    group->add_option("--model", src.model_path, "model file (JSON)");
    group->add_option("--scenario", src.scenario, "built-in map: web, web-case1, web-case2, civil, civil-case1, civil-case2");
    group->require_option(1);
}

std::optional<std::size_t> env_max_steps()
{
    const char* raw = std::getenv("GREYMAP_MAX_STEPS");
    if (raw == nullptr || *raw == '\0') {
        return std::nullopt;
    }
    const std::string_view text(raw);
    std::size_t value = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size()) {
        throw InvalidArgument(fmt::format("GREYMAP_MAX_STEPS must be a positive integer, got '{}'", text));
    }
    return value;
}

Model load_source(const Source& src, std::optional<std::size_t> steps)
{
    Model m = src.model_path.empty() ? builtin(parse_scenario(src.scenario)) : load_model(src.model_path);
    if (auto env = env_max_steps()) {
        m.max_steps = *env;
    }
    if (steps) {
        m.max_steps = *steps;
    }
    m.validate();
    return m;
}

void emit(const std::string& text, const std::string& path, std::ostream& out)
{
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw InvalidArgument(fmt::format("cannot write '{}'", path));
    }
    file << text;
    if (!file) {
        throw Error(fmt::format("failed writing '{}'", path));
    }
}

std::vector<double> slopes(const Model& m, const std::vector<double>& given)
{
    if (!given.empty()) {
        return given;
    }
    if (!m.lambda_sweep.empty()) {
        return m.lambda_sweep;
    }
    return {m.activation.lambda()};
}

void check_slopes(const std::vector<double>& lambdas)
{
    for (double l : lambdas) {
        if (!(l > 0.0) || !std::isfinite(l)) {
            throw InvalidArgument(fmt::format("slope must be positive, got {}", l));
        }
    }
}

struct SimulateArgs {
    Source src;
    std::string engine = "fggcm";
    std::optional<double> lambda;
    std::optional<std::size_t> steps;
    std::string out;
};

void simulate(const SimulateArgs& a, std::ostream& out)
{
    const Model m = load_source(a.src, a.steps);
    const Engine engine = parse_engine(a.engine);
    const double lambda = a.lambda.value_or(m.activation.lambda());
    check_slopes({lambda});
    const Trajectory traj = run(m, lambda, engine);
    const Behavior b = classify(traj, {m.fp_tolerance, m.cycle_tolerance, ClassifyOptions{}.confirmation_steps});
    if (!a.out.empty()) {
        emit(trace_csv(traj), a.out, out);
    }
    std::string kernels;
    std::string greyness;
    for (const auto& g : b.final_state) {
        kernels += fmt::format("{}{:.12g}", kernels.empty() ? "" : ",", g.kernel());
        greyness += fmt::format("{}{:.12g}", greyness.empty() ? "" : ",", g.greyness());
    }
    out << behavior_line(b) << "\n";
    out << "steps=" << traj.steps() << "\n";
    out << "final_kernels=" << kernels << "\n";
    out << "final_greyness=" << greyness << "\n";
}

struct AnalyzeArgs {
    Source src;
    std::string engine = "fggcm";
    std::vector<double> lambdas;
    std::optional<std::size_t> steps;
    std::string format = "csv";
    bool parallel = false;
    std::string out;
};

void analyze(const AnalyzeArgs& a, std::ostream& out)
{
    const Model m = load_source(a.src, a.steps);
    const Engine engine = parse_engine(a.engine);
    const auto lambdas = slopes(m, a.lambdas);
    check_slopes(lambdas);
    const auto reports = sweep(lambdas, [&](double l) { return full_report(m, l, engine); }, a.parallel);

    std::string text;
    if (a.format == "csv") {
        text = report_csv_header() + "\n";
        for (const auto& r : reports) {
            text += to_csv_row(r) + "\n";
        }
    } else {
        for (std::size_t k = 0; k < reports.size(); ++k) {
            text += (k == 0 ? "" : "\n") + to_key_value(reports[k]);
        }
    }
    emit(text, a.out, out);
}

struct InjectArgs {
    Source src;
    double g = kBuiltinGreyness;
    bool state = false;
    std::string out;
};

void inject(const InjectArgs& a, std::ostream& out)
{
    Model m = load_source(a.src, std::nullopt);
    const bool crisp_grey = std::all_of(m.weights.values().begin(), m.weights.values().end(),
                                        [](const Ggn& w) { return w.is_crisp(); });
    if (!m.crisp_weights && !crisp_grey) {
        throw InvalidArgument("injection needs a crisp weight matrix");
    }
    const Matrix<double> crisp =
        m.crisp_weights ? *m.crisp_weights : m.weights.map([](const Ggn& w) { return w.kernel(); });
    auto iw = inject_greyness(crisp, a.g, m.weight_domain);
    m.weights = iw.map([&](const Interval& iv) { return ggn_from_interval(iv, m.weight_domain); });
    m.interval_weights = std::move(iw);
    m.crisp_weights = crisp;
    if (a.state) {
        std::vector<double> a0;
        if (m.initial_crisp) {
            a0 = *m.initial_crisp;
        } else {
            for (const auto& s : m.initial_state) {
                a0.push_back(s.kernel());
            }
        }
        auto ivs = inject_greyness(a0, a.g, m.state_domain);
        m.initial_state.clear();
        for (const auto& iv : ivs) {
            m.initial_state.push_back(ggn_from_interval(iv, m.state_domain));
        }
        m.initial_intervals = std::move(ivs);
        m.initial_crisp = std::move(a0);
    }
    emit(serialize_model(m), a.out, out);
}

int guarded(const std::function<void()>& body, std::ostream& err)
{
    try {
        body();
        return kOk;
    } catch (const UnsupportedEngine& e) {
        err << "error: " << e.what() << "\n";
        return kUnsupported;
    } catch (const ParseError& e) {
        err << "error: " << e.what();
        if (!e.field().empty()) {
            err << " (field " << e.field() << ")";
        }
        if (e.line() != 0) {
            err << " (line " << e.line() << ")";
        }
        err << "\n";
        return kBadInput;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const DimensionMismatch& e) {
        err << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kFailure;
    }
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Grey cognitive map simulator and convergence checker", "greymap"};
    app.require_subcommand(1);

    SimulateArgs sim_args;
    auto* sim = app.add_subcommand("simulate", "iterate one map and classify the trajectory");
    add_source(sim, sim_args.src);
    sim->add_option("--engine", sim_args.engine, "fcm, fgcm or fggcm")->capture_default_str();
    sim->add_option("--lambda", sim_args.lambda, "activation slope (default: the model's)");
    sim->add_option("--steps", sim_args.steps, "iteration limit");
    sim->add_option("--out", sim_args.out, "write the trace CSV here");

    AnalyzeArgs an_args;
    auto* an = app.add_subcommand("analyze", "convergence report for each slope");
    add_source(an, an_args.src);
    an->add_option("--engine", an_args.engine, "fcm, fgcm or fggcm")->capture_default_str();
    an->add_option("--lambda", an_args.lambdas, "slopes (default: the model's sweep)")->delimiter(',');
    an->add_option("--steps", an_args.steps, "iteration limit");
    an->add_option("--format", an_args.format, "csv or kv")
        ->check(CLI::IsMember({"csv", "kv"}))
        ->capture_default_str();
    an->add_flag("--parallel", an_args.parallel, "run slopes concurrently");
    an->add_option("--out", an_args.out, "output file");

    std::string table;
    bool rep_parallel = false;
    std::string rep_out;
    auto* rep = app.add_subcommand("reproduce", "recompute a table from the built-in maps");
    rep->add_option("--table", table, "T2, T4, T5, T6 or behaviors")->required();
    rep->add_flag("--parallel", rep_parallel, "run slopes concurrently");
    rep->add_option("--out", rep_out, "output file");

    InjectArgs inj_args;
    auto* inj = app.add_subcommand("inject-grey", "turn crisp weights into intervals of half-width g");
    add_source(inj, inj_args.src);
    inj->add_option("--g", inj_args.g, "half-width")->capture_default_str();
    inj->add_flag("--state", inj_args.state, "also widen the initial state");
    inj->add_option("--out", inj_args.out, "output model file");

    std::string exp_scenario;
    std::string exp_out;
    auto* exp = app.add_subcommand("export", "write a built-in map as a model file");
    exp->add_option("--scenario", exp_scenario, "built-in map")->required();
    exp->add_option("--out", exp_out, "output model file");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err); // --help
            return kOk;
        }
        err << "error: " << e.what() << "\n";
        return kBadInput;
    }

    if (*sim) {
        return guarded([&] { simulate(sim_args, out); }, err);
    }
    if (*an) {
        return guarded([&] { analyze(an_args, out); }, err);
    }
    if (*rep) {
        return guarded([&] { emit(reproduce(parse_table(table), rep_parallel), rep_out, out); }, err);
    }
    if (*inj) {
        return guarded([&] { inject(inj_args, out); }, err);
    }
    return guarded([&] { emit(serialize_model(builtin(parse_scenario(exp_scenario))), exp_out, out); }, err);
}

} // namespace greymap::cli
