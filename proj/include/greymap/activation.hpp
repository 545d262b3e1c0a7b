#pragma once

#include "greymap/grey.hpp"

#include <string_view>

namespace greymap {

enum class ActivationKind { Sigmoid, Tanh };

std::string_view to_string(ActivationKind kind);
// Accepts "sigmoid" and "tanh"; throws InvalidArgument otherwise.
ActivationKind parse_activation_kind(std::string_view text);

// Sigmoid 1/(1+e^{-lambda x}) or tanh(lambda x) with slope lambda > 0.
class Activation {
public:
    Activation(ActivationKind kind, double lambda);

    ActivationKind kind() const noexcept { return kind_; }
    double lambda() const noexcept { return lambda_; }
    Activation with_lambda(double lambda) const { return {kind_, lambda}; }

    double operator()(double x) const noexcept;
    // Sigmoid scales greyness by the output kernel; tanh keeps it.
    Ggn operator()(const Ggn& g) const;
    // Both functions are increasing, so the endpoint images are exact.
    Interval operator()(const Interval& x) const;

    // Global Lipschitz constant: lambda/4 for sigmoid, lambda for tanh.
    double lipschitz() const noexcept;
    // Frobenius bound below which the kernel map contracts: 4/lambda or 1/lambda.
    double contraction_threshold() const noexcept { return 1.0 / lipschitz(); }

    friend bool operator==(const Activation&, const Activation&) = default;

private:
    ActivationKind kind_;
    double lambda_;
};

} // namespace greymap
