#include "greymap/activation.hpp"

#include "greymap/error.hpp"

#include <cmath>
#include <fmt/format.h>

namespace greymap {

std::string_view to_string(ActivationKind kind)
{
    return kind == ActivationKind::Sigmoid ? "sigmoid" : "tanh";
}

ActivationKind parse_activation_kind(std::string_view text)
{
    if (text == "sigmoid") {
        return ActivationKind::Sigmoid;
    }
    if (text == "tanh") {
        return ActivationKind::Tanh;
    }
    throw InvalidArgument(fmt::format("unknown activation kind '{}'", text));
}

Activation::Activation(ActivationKind kind, double lambda) : kind_(kind), lambda_(lambda)
{
    if (!std::isfinite(lambda) || !(lambda > 0.0)) {
        throw InvalidArgument(fmt::format("activation slope must be positive, got {}", lambda));
    }
}

double Activation::operator()(double x) const noexcept
{
    const double z = lambda_ * x;
    if (kind_ == ActivationKind::Tanh) {
        return std::tanh(z);
    }
    // exp of a non-positive argument never overflows
    if (z >= 0.0) {
        return 1.0 / (1.0 + std::exp(-z));
    }
    const double e = std::exp(z);
    return e / (1.0 + e);
}

Ggn Activation::operator()(const Ggn& g) const
{
    const double k = (*this)(g.kernel());
    if (kind_ == ActivationKind::Tanh) {
        return {k, g.greyness()};
    }
    return {k, k * g.greyness()};
}

Interval Activation::operator()(const Interval& x) const
{
    return {(*this)(x.lower()), (*this)(x.upper())};
}

double Activation::lipschitz() const noexcept
{
    return kind_ == ActivationKind::Sigmoid ? lambda_ / 4.0 : lambda_;
}

} // namespace greymap
