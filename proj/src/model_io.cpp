#include "greymap/error.hpp"
#include "greymap/scenarios.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <optional>
#include <sstream>
#include <variant>

namespace greymap {

namespace {

using Json = nlohmann::ordered_json;
using Step = std::variant<std::string, std::size_t>;
using Path = std::vector<Step>;

std::string path_string(const Path& path)
{
    std::string out;
    for (const auto& step : path) {
        if (const auto* key = std::get_if<std::string>(&step)) {
            if (!out.empty()) {
                out += '.';
            }
            out += *key;
        } else {
            out += fmt::format("[{}]", std::get<std::size_t>(step));
        }
    }
    return out;
}

std::size_t line_at(std::string_view text, std::size_t offset)
{
    offset = std::min(offset, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

// Walks already-validated JSON text to find where a value starts, so that
// semantic errors can point at a line.
class Locator {
public:
    explicit Locator(std::string_view text) : s_(text) {}

    std::optional<std::size_t> find(const Path& path)
    {
        p_ = 0;
        return seek(path, 0) ? std::optional<std::size_t>(p_) : std::nullopt;
    }

private:
    void ws()
    {
        while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) {
            ++p_;
        }
    }

    std::string_view string_body()
    {
        const std::size_t start = ++p_;
        while (p_ < s_.size() && s_[p_] != '"') {
            p_ += s_[p_] == '\\' ? 2 : 1;
        }
        const auto body = s_.substr(start, p_ - start);
        ++p_;
        return body;
    }

    void skip_value()
    {
        ws();
        if (p_ >= s_.size()) {
            return;
        }
        if (s_[p_] == '"') {
            string_body();
            return;
        }
        if (s_[p_] == '{' || s_[p_] == '[') {
            int depth = 0;
            do {
                const char c = s_[p_];
                if (c == '"') {
                    string_body();
                    continue;
                }
                if (c == '{' || c == '[') {
                    ++depth;
                } else if (c == '}' || c == ']') {
                    --depth;
                }
                ++p_;
            } while (depth > 0 && p_ < s_.size());
            return;
        }
        while (p_ < s_.size() && s_[p_] != ',' && s_[p_] != ']' && s_[p_] != '}' &&
               !std::isspace(static_cast<unsigned char>(s_[p_]))) {
            ++p_;
        }
    }

    bool seek(const Path& path, std::size_t k)
    {
        ws();
        if (k == path.size()) {
            return true;
        }
        if (p_ >= s_.size()) {
            return false;
        }
        if (const auto* key = std::get_if<std::string>(&path[k])) {
            if (s_[p_] != '{') {
                return false;
            }
            ++p_;
            while (true) {
                ws();
                if (p_ >= s_.size() || s_[p_] != '"') {
                    return false;
                }
                const auto name = string_body();
                ws();
                ++p_; // ':'
                if (name == *key) {
                    return seek(path, k + 1);
                }
                skip_value();
                ws();
                if (p_ >= s_.size() || s_[p_] != ',') {
                    return false;
                }
                ++p_;
            }
        }
        const std::size_t index = std::get<std::size_t>(path[k]);
        if (s_[p_] != '[') {
            return false;
        }
        ++p_;
        for (std::size_t i = 0;; ++i) {
            ws();
            if (i == index) {
                return seek(path, k + 1);
            }
            skip_value();
            ws();
            if (p_ >= s_.size() || s_[p_] != ',') {
                return false;
            }
            ++p_;
        }
    }

    std::string_view s_;
    std::size_t p_ = 0;
};

Path operator/(Path base, Step step)
{
    base.push_back(std::move(step));
    return base;
}

struct Entry {
    Ggn ggn;
    std::optional<Interval> interval;
    std::optional<double> crisp;
};

class Reader {
public:
    explicit Reader(std::string_view text) : text_(text) {}

    [[noreturn]] void fail(const Path& path, const std::string& message) const
    {
        const auto offset = Locator(text_).find(path);
        throw ParseError(message, offset ? line_at(text_, *offset) : 0, path_string(path));
    }

    double number(const Json& j, const Path& path) const
    {
        if (!j.is_number()) {
            fail(path, "expected a number");
        }
        const double x = j.get<double>();
        if (!std::isfinite(x)) {
            fail(path, "number must be finite");
        }
        return x;
    }

    std::size_t count(const Json& j, const Path& path) const
    {
        if (!j.is_number_integer() || j.get<long long>() < 0) {
            fail(path, "expected a non-negative integer");
        }
        return j.get<std::size_t>();
    }

    const Json& member(const Json& obj, const Path& path, std::string_view key) const
    {
        if (!obj.contains(key)) {
            fail(path, fmt::format("missing field '{}'", key));
        }
        return obj.at(std::string(key));
    }

    void require_object(const Json& j, const Path& path) const
    {
        if (!j.is_object()) {
            fail(path, "expected an object");
        }
    }

    void require_array(const Json& j, const Path& path) const
    {
        if (!j.is_array()) {
            fail(path, "expected an array");
        }
    }

    Interval interval(const Json& j, const Path& path) const
    {
        if (j.is_number()) {
            return Interval::point(number(j, path));
        }
        if (!j.is_array() || j.size() != 2) {
            fail(path, "expected an interval [lower, upper] or a number");
        }
        const double lo = number(j[0], path / std::size_t{0});
        const double hi = number(j[1], path / std::size_t{1});
        if (lo > hi) {
            fail(path, fmt::format("interval lower bound {} exceeds upper bound {}", lo, hi));
        }
        return {lo, hi};
    }

    GreyDomain domain(const Json& j, const Path& path) const
    {
        require_object(j, path);
        const double lo = number(member(j, path, "lower"), path / std::string("lower"));
        const double hi = number(member(j, path, "upper"), path / std::string("upper"));
        if (!(hi > lo)) {
            fail(path, "domain must have positive measure");
        }
        return {lo, hi};
    }

    Ggn grey_union(const std::vector<Interval>& parts, const std::vector<double>& probs,
                   const GreyDomain& dom, const Path& path) const
    {
        try {
            return ggn_from_intervals(parts, dom, probs);
        } catch (const Error& e) {
            fail(path, e.what());
        }
    }

    std::vector<Interval> interval_list(const Json& j, const Path& path) const
    {
        require_array(j, path);
        if (j.empty()) {
            fail(path, "interval list is empty");
        }
        std::vector<Interval> parts;
        for (std::size_t k = 0; k < j.size(); ++k) {
            parts.push_back(interval(j[k], path / k));
        }
        return parts;
    }

    Entry entry(const Json& j, const GreyDomain& dom, const Path& path) const
    {
        Entry e;
        if (j.is_number()) {
            const double x = number(j, path);
            e.ggn = Ggn::crisp(x);
            e.interval = Interval::point(x);
            e.crisp = x;
            return e;
        }
        if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
            const Interval iv = interval(j, path);
            e.ggn = grey_union({iv}, {}, dom, path);
            e.interval = iv;
            return e;
        }
        if (j.is_array()) {
            const auto parts = interval_list(j, path);
            e.ggn = grey_union(parts, {}, dom, path);
            if (parts.size() == 1) {
                e.interval = parts.front();
            }
            return e;
        }
        if (j.is_object() && j.contains("kernel")) {
            const double k = number(j.at("kernel"), path / std::string("kernel"));
            const double g = j.contains("greyness") ? number(j.at("greyness"), path / std::string("greyness")) : 0.0;
            if (g < 0.0) {
                fail(path / std::string("greyness"), "greyness must be non-negative");
            }
            e.ggn = Ggn(k, g);
            return e;
        }
        if (j.is_object() && j.contains("intervals")) {
            const auto parts = interval_list(j.at("intervals"), path / std::string("intervals"));
            std::vector<double> probs;
            if (j.contains("probs")) {
                const Json& p = j.at("probs");
                require_array(p, path / std::string("probs"));
                for (std::size_t k = 0; k < p.size(); ++k) {
                    probs.push_back(number(p[k], path / std::string("probs") / k));
                }
            }
            e.ggn = grey_union(parts, probs, dom, path);
            if (parts.size() == 1 && probs.size() <= 1) {
                e.interval = parts.front();
            }
            return e;
        }
        fail(path, "unrecognised grey entry");
    }

    std::vector<Entry> entry_vector(const Json& j, const GreyDomain& dom, const Path& path) const
    {
        require_array(j, path);
        std::vector<Entry> out;
        for (std::size_t k = 0; k < j.size(); ++k) {
            out.push_back(entry(j[k], dom, path / k));
        }
        return out;
    }

    Matrix<Entry> entry_matrix(const Json& j, std::size_t n, const GreyDomain& dom, const Path& path) const
    {
        require_array(j, path);
        if (j.size() != n) {
            fail(path, fmt::format("expected {} rows, found {}", n, j.size()));
        }
        Matrix<Entry> out(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto row = entry_vector(j[i], dom, path / i);
            if (row.size() != n) {
                fail(path / i, fmt::format("expected {} columns, found {}", n, row.size()));
            }
            std::copy(row.begin(), row.end(), out.row(i).begin());
        }
        return out;
    }

    template <class T, class F>
    std::optional<Matrix<T>> companion_matrix(const Json& root, std::string_view key, std::size_t n,
                                              const Matrix<Entry>& derived, F&& read) const
    {
        const Path path{std::string(key)};
        if (root.contains(key)) {
            const Json& j = root.at(std::string(key));
            if (j.is_null()) {
                return std::nullopt;
            }
            require_array(j, path);
            if (j.size() != n) {
                fail(path, fmt::format("expected {} rows, found {}", n, j.size()));
            }
            Matrix<T> out(n, n);
            for (std::size_t i = 0; i < n; ++i) {
                require_array(j[i], path / i);
                if (j[i].size() != n) {
                    fail(path / i, fmt::format("expected {} columns, found {}", n, j[i].size()));
                }
                for (std::size_t c = 0; c < n; ++c) {
                    out(i, c) = read(j[i][c], path / i / c);
                }
            }
            return out;
        }
        return derive<T>(derived);
    }

    template <class T, class F>
    std::optional<std::vector<T>> companion_vector(const Json& root, std::string_view key, std::size_t n,
                                                   const std::vector<Entry>& derived, F&& read) const
    {
        const Path path{std::string(key)};
        if (root.contains(key)) {
            const Json& j = root.at(std::string(key));
            if (j.is_null()) {
                return std::nullopt;
            }
            require_array(j, path);
            if (j.size() != n) {
                fail(path, fmt::format("expected {} entries, found {}", n, j.size()));
            }
            std::vector<T> out;
            for (std::size_t k = 0; k < n; ++k) {
                out.push_back(read(j[k], path / k));
            }
            return out;
        }
        Matrix<Entry> row(1, derived.size());
        std::copy(derived.begin(), derived.end(), row.row(0).begin());
        auto m = derive<T>(row);
        if (!m) {
            return std::nullopt;
        }
        return std::vector<T>(m->values().begin(), m->values().end());
    }

private:
    template <class T>
    static std::optional<Matrix<T>> derive(const Matrix<Entry>& entries)
    {
        Matrix<T> out(entries.rows(), entries.cols());
        for (std::size_t i = 0; i < entries.rows(); ++i) {
            for (std::size_t j = 0; j < entries.cols(); ++j) {
                const Entry& e = entries(i, j);
                if constexpr (std::is_same_v<T, Interval>) {
                    if (!e.interval) {
                        return std::nullopt;
                    }
                    out(i, j) = *e.interval;
                } else {
                    if (!e.crisp) {
                        return std::nullopt;
                    }
                    out(i, j) = *e.crisp;
                }
            }
        }
        return out;
    }

    std::string_view text_;
};

constexpr std::string_view kKnownFields[] = {
    "name",           "activation",        "grey_domain",     "weight_domain", "weights",
    "interval_weights", "crisp_weights",   "initial_state",   "initial_intervals", "initial_crisp",
    "max_steps",      "tolerances",        "lambda_sweep",
};

} // namespace

Model parse_model(std::string_view text)
{
    Json root;
    try {
        root = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(e.what(), line_at(text, e.byte == 0 ? 0 : e.byte - 1), "");
    }

    const Reader r(text);
    r.require_object(root, {});
    for (const auto& [key, value] : root.items()) {
        if (std::find(std::begin(kKnownFields), std::end(kKnownFields), key) == std::end(kKnownFields)) {
            r.fail({key}, fmt::format("unknown field '{}'", key));
        }
    }

    Model m;
    if (root.contains("name")) {
        if (!root["name"].is_string()) {
            r.fail({std::string("name")}, "expected a string");
        }
        m.name = root["name"].get<std::string>();
    }

    const Path act_path{std::string("activation")};
    const Json& act = r.member(root, {}, "activation");
    r.require_object(act, act_path);
    const Json& kind_json = r.member(act, act_path, "kind");
    if (!kind_json.is_string()) {
        r.fail(act_path / std::string("kind"), "expected a string");
    }
    ActivationKind kind{};
    try {
        kind = parse_activation_kind(kind_json.get<std::string>());
    } catch (const Error& e) {
        r.fail(act_path / std::string("kind"), e.what());
    }
    double lambda = 1.0;
    if (act.contains("lambda_default")) {
        lambda = r.number(act["lambda_default"], act_path / std::string("lambda_default"));
    }
    try {
        m.activation = Activation(kind, lambda);
    } catch (const Error& e) {
        r.fail(act_path / std::string("lambda_default"), e.what());
    }

    m.state_domain = root.contains("grey_domain") ? r.domain(root["grey_domain"], {std::string("grey_domain")})
                                                  : default_state_domain(kind);
    if (root.contains("weight_domain")) {
        m.weight_domain = r.domain(root["weight_domain"], {std::string("weight_domain")});
    }

    const auto state = r.entry_vector(r.member(root, {}, "initial_state"), m.state_domain,
                                      {std::string("initial_state")});
    const std::size_t n = state.size();
    if (n == 0) {
        r.fail({std::string("initial_state")}, "model needs at least one node");
    }
    const auto weights = r.entry_matrix(r.member(root, {}, "weights"), n, m.weight_domain, {std::string("weights")});

    m.weights = weights.map([](const Entry& e) { return e.ggn; });
    for (const auto& e : state) {
        m.initial_state.push_back(e.ggn);
    }

    auto read_interval = [&](const Json& j, const Path& p) { return r.interval(j, p); };
    auto read_number = [&](const Json& j, const Path& p) { return r.number(j, p); };
    m.interval_weights = r.companion_matrix<Interval>(root, "interval_weights", n, weights, read_interval);
    m.crisp_weights = r.companion_matrix<double>(root, "crisp_weights", n, weights, read_number);
    m.initial_intervals = r.companion_vector<Interval>(root, "initial_intervals", n, state, read_interval);
    m.initial_crisp = r.companion_vector<double>(root, "initial_crisp", n, state, read_number);

    if (root.contains("max_steps")) {
        m.max_steps = r.count(root["max_steps"], {std::string("max_steps")});
    }
    if (root.contains("tolerances")) {
        const Path tp{std::string("tolerances")};
        const Json& t = root["tolerances"];
        r.require_object(t, tp);
        if (t.contains("fixed_point")) {
            m.fp_tolerance = r.number(t["fixed_point"], tp / std::string("fixed_point"));
        }
        if (t.contains("cycle")) {
            m.cycle_tolerance = r.number(t["cycle"], tp / std::string("cycle"));
        }
    }
    if (root.contains("lambda_sweep")) {
        const Path lp{std::string("lambda_sweep")};
        const Json& l = root["lambda_sweep"];
        r.require_array(l, lp);
        for (std::size_t k = 0; k < l.size(); ++k) {
            const double x = r.number(l[k], lp / k);
            if (!(x > 0.0)) {
                r.fail(lp / k, "slope must be positive");
            }
            m.lambda_sweep.push_back(x);
        }
    }

    try {
        m.validate();
    } catch (const Error& e) {
        throw ParseError(e.what(), 0, "");
    }
    return m;
}

namespace {

Json domain_json(const GreyDomain& d)
{
    return Json{{"lower", d.lower()}, {"upper", d.upper()}};
}

Json ggn_json(const Ggn& g)
{
    if (g.is_crisp()) {
        return g.kernel();
    }
    return Json{{"kernel", g.kernel()}, {"greyness", g.greyness()}};
}

Json interval_json(const Interval& iv)
{
    return Json::array({iv.lower(), iv.upper()});
}

template <class T, class F>
Json matrix_json(const Matrix<T>& m, F&& convert)
{
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (const auto& x : m.row(i)) {
            row.push_back(convert(x));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

template <class T, class F>
Json vector_json(std::span<const T> v, F&& convert)
{
    Json out = Json::array();
    for (const auto& x : v) {
        out.push_back(convert(x));
    }
    return out;
}

} // namespace

std::string serialize_model(const Model& m)
{
    auto same = [](double x) { return x; };
    Json root;
    root["name"] = m.name;
    root["activation"] = {{"kind", std::string(to_string(m.activation.kind()))},
                          {"lambda_default", m.activation.lambda()}};
    root["grey_domain"] = domain_json(m.state_domain);
    root["weight_domain"] = domain_json(m.weight_domain);
    root["weights"] = matrix_json(m.weights, ggn_json);
    // null marks a form that is absent and must not be derived on load
    root["interval_weights"] = m.interval_weights ? matrix_json(*m.interval_weights, interval_json) : Json();
    root["crisp_weights"] = m.crisp_weights ? matrix_json(*m.crisp_weights, same) : Json();
    root["initial_state"] = vector_json<Ggn>(m.initial_state, ggn_json);
    root["initial_intervals"] =
        m.initial_intervals ? vector_json<Interval>(*m.initial_intervals, interval_json) : Json();
    root["initial_crisp"] = m.initial_crisp ? vector_json<double>(*m.initial_crisp, same) : Json();
    root["max_steps"] = m.max_steps;
    root["tolerances"] = {{"fixed_point", m.fp_tolerance}, {"cycle", m.cycle_tolerance}};
    root["lambda_sweep"] = m.lambda_sweep;

    // one matrix row per line, everything else compact
    std::string out = "{\n";
    std::size_t k = 0;
    for (const auto& [key, value] : root.items()) {
        out += fmt::format("  {}: ", Json(key).dump());
        const bool matrix = value.is_array() && !value.empty() &&
                            (key == "weights" || key == "interval_weights" || key == "crisp_weights");
        if (matrix) {
            out += "[\n";
            for (std::size_t i = 0; i < value.size(); ++i) {
                out += fmt::format("    {}{}\n", value[i].dump(), i + 1 < value.size() ? "," : "");
            }
            out += "  ]";
        } else {
            out += value.dump();
        }
        out += ++k < root.size() ? ",\n" : "\n";
    }
    out += "}\n";
    return out;
}

Model load_model(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError(fmt::format("cannot open '{}'", path.string()), 0, "");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_model(buf.str());
}

void save_model(const Model& model, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InvalidArgument(fmt::format("cannot write '{}'", path.string()));
    }
    out << serialize_model(model);
    if (!out) {
        throw InvalidArgument(fmt::format("failed writing '{}'", path.string()));
    }
}

} // namespace greymap
