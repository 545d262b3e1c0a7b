#include "greymap/grey.hpp"

#include "greymap/error.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace greymap {

SpansZero::SpansZero(std::size_t row, std::size_t col)
    : Error(fmt::format("weight ({}, {}) spans zero", row, col)), row_(row), col_(col)
{
}

DegenerateRow::DegenerateRow(std::size_t row)
    : Error(fmt::format("row {} has a zero weighted kernel sum", row)), row_(row)
{
}

ParseError::ParseError(const std::string& message, std::size_t line, std::string field)
    : Error(line > 0 ? fmt::format("line {}: {}", line, message) : message), line_(line),
      field_(std::move(field))
{
}

Interval::Interval(double lower, double upper) : lower_(lower), upper_(upper)
{
    if (!std::isfinite(lower) || !std::isfinite(upper)) {
        throw InvalidArgument("interval bounds must be finite");
    }
    if (lower > upper) {
        throw InvalidArgument(fmt::format("interval lower bound {} exceeds upper bound {}", lower, upper));
    }
}

Interval operator+(const Interval& a, const Interval& b)
{
    return {a.lower() + b.lower(), a.upper() + b.upper()};
}

Interval operator*(const Interval& a, const Interval& b)
{
    const double p[] = {a.lower() * b.lower(), a.lower() * b.upper(), a.upper() * b.lower(),
                        a.upper() * b.upper()};
    const auto [lo, hi] = std::minmax_element(std::begin(p), std::end(p));
    return {*lo, *hi};
}

GreyDomain::GreyDomain(double lower, double upper) : lower_(lower), upper_(upper)
{
    if (!std::isfinite(lower) || !std::isfinite(upper) || !(upper - lower > 0.0)) {
        throw InvalidArgument(fmt::format("grey domain [{}, {}] must have positive measure", lower, upper));
    }
}

Ggn::Ggn(double kernel, double greyness) : kernel_(kernel), greyness_(greyness)
{
    if (!std::isfinite(kernel) || !std::isfinite(greyness)) {
        throw InvalidArgument("grey number components must be finite");
    }
    if (greyness < 0.0) {
        throw InvalidArgument(fmt::format("greyness {} is negative", greyness));
    }
}

Ggn ggn_from_intervals(std::span<const Interval> intervals, const GreyDomain& domain,
                       std::span<const double> probs)
{
    if (intervals.empty()) {
        throw InvalidArgument("a grey number needs at least one interval");
    }
    for (const auto& iv : intervals) {
        if (!domain.contains(iv)) {
            throw InvalidArgument(fmt::format("interval [{}, {}] lies outside the domain [{}, {}]",
                                              iv.lower(), iv.upper(), domain.lower(), domain.upper()));
        }
    }

    double kernel = 0.0;
    if (probs.empty()) {
        for (const auto& iv : intervals) {
            kernel += iv.midpoint();
        }
        kernel /= static_cast<double>(intervals.size());
    } else {
        if (probs.size() != intervals.size()) {
            throw InvalidArgument("one probability per interval is required");
        }
        double total = 0.0;
        for (double p : probs) {
            if (!(p > 0.0) || !std::isfinite(p)) {
                throw InvalidArgument("interval probabilities must be positive");
            }
            total += p;
        }
        if (std::abs(total - 1.0) > 1e-9) {
            throw InvalidArgument(fmt::format("interval probabilities sum to {}, not 1", total));
        }
        for (std::size_t i = 0; i < intervals.size(); ++i) {
            kernel += probs[i] * intervals[i].midpoint();
        }
    }

    const double mu = domain.measure();
    double greyness = 0.0;
    if (kernel == 0.0) {
        for (const auto& iv : intervals) {
            greyness += iv.width() / mu;
        }
    } else {
        for (const auto& iv : intervals) {
            greyness += std::abs(iv.midpoint()) * iv.width() / mu;
        }
        greyness /= std::abs(kernel);
    }
    return {kernel, greyness};
}

Ggn ggn_from_interval(const Interval& iv, const GreyDomain& domain)
{
    return ggn_from_intervals(std::span(&iv, 1), domain);
}

namespace {

double weighted_greyness(const Ggn& a, const Ggn& b)
{
    const double ma = std::abs(a.kernel());
    const double mb = std::abs(b.kernel());
    const double total = ma + mb;
    if (total == 0.0) {
        return 0.5 * a.greyness() + 0.5 * b.greyness();
    }
    return (ma / total) * a.greyness() + (mb / total) * b.greyness();
}

} // namespace

Ggn operator+(const Ggn& a, const Ggn& b)
{
    return {a.kernel() + b.kernel(), weighted_greyness(a, b)};
}

Ggn operator-(const Ggn& a, const Ggn& b)
{
    return {a.kernel() - b.kernel(), weighted_greyness(a, b)};
}

Ggn operator*(const Ggn& a, const Ggn& b)
{
    return {a.kernel() * b.kernel(), std::max(a.greyness(), b.greyness())};
}

Ggn operator/(const Ggn& a, const Ggn& b)
{
    if (b.kernel() == 0.0) {
        throw ZeroKernel();
    }
    return {a.kernel() / b.kernel(), std::max(a.greyness(), b.greyness())};
}

Ggn operator*(double k, const Ggn& g)
{
    if (!std::isfinite(k)) {
        throw InvalidArgument("scalar factor must be finite");
    }
    return {k * g.kernel(), g.greyness()};
}

Ggn inverse(const Ggn& g)
{
    if (g.kernel() == 0.0) {
        throw ZeroKernel();
    }
    return {1.0 / g.kernel(), g.greyness()};
}

Ggn pow(const Ggn& g, double exponent)
{
    return {std::pow(g.kernel(), exponent), g.greyness()};
}

bool approx_equal(const Ggn& a, const Ggn& b, double tol)
{
    return std::abs(a.kernel() - b.kernel()) <= tol && std::abs(a.greyness() - b.greyness()) <= tol;
}

double distance(const Ggn& a, const Ggn& b)
{
    return std::hypot(a.kernel() - b.kernel(), a.greyness() - b.greyness());
}

double distance(std::span<const Ggn> x, std::span<const Ggn> y)
{
    if (x.size() != y.size()) {
        throw DimensionMismatch(fmt::format("grey vectors of length {} and {}", x.size(), y.size()));
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dk = x[i].kernel() - y[i].kernel();
        const double dg = x[i].greyness() - y[i].greyness();
        sum += dk * dk + dg * dg;
    }
    return std::sqrt(sum);
}

} // namespace greymap
