#pragma once

#include <span>
#include <vector>

namespace greymap {

// Interval grey number [lower, upper].
class Interval {
public:
    constexpr Interval() = default;
    // Throws InvalidArgument unless both bounds are finite and lower <= upper.
    Interval(double lower, double upper);
    static Interval point(double x) { return Interval(x, x); }

    double lower() const noexcept { return lower_; }
    double upper() const noexcept { return upper_; }
    double width() const noexcept { return upper_ - lower_; }
    double midpoint() const noexcept { return 0.5 * (lower_ + upper_); }
    bool contains(double x) const noexcept { return lower_ <= x && x <= upper_; }
    bool spans_zero() const noexcept { return lower_ < 0.0 && 0.0 < upper_; }

    friend bool operator==(const Interval&, const Interval&) = default;

private:
    double lower_ = 0.0;
    double upper_ = 0.0;
};

Interval operator+(const Interval& a, const Interval& b);
// Hull of the four boundary products.
Interval operator*(const Interval& a, const Interval& b);

// Background domain used to normalise greyness. Measure is the Lebesgue
// length of the domain.
class GreyDomain {
public:
    GreyDomain(double lower, double upper);

    static GreyDomain symmetric() { return {-1.0, 1.0}; }
    static GreyDomain unit() { return {0.0, 1.0}; }

    double lower() const noexcept { return lower_; }
    double upper() const noexcept { return upper_; }
    double measure() const noexcept { return upper_ - lower_; }
    bool contains(const Interval& iv) const noexcept
    {
        return lower_ <= iv.lower() && iv.upper() <= upper_;
    }

    friend bool operator==(const GreyDomain&, const GreyDomain&) = default;

private:
    double lower_;
    double upper_;
};

// General grey number in simplified (kernel, greyness) form.
class Ggn {
public:
    constexpr Ggn() = default;
    // Throws InvalidArgument on non-finite components or negative greyness.
    Ggn(double kernel, double greyness);
    static Ggn crisp(double x) { return Ggn(x, 0.0); }

    double kernel() const noexcept { return kernel_; }
    double greyness() const noexcept { return greyness_; }
    bool is_crisp() const noexcept { return greyness_ == 0.0; }

    friend bool operator==(const Ggn&, const Ggn&) = default;

private:
    double kernel_ = 0.0;
    double greyness_ = 0.0;
};

using GgnVector = std::vector<Ggn>;

// Kernel and greyness of a union of intervals. Without probabilities the
// kernel is the plain mean of the interval midpoints, with them it is the
// probability-weighted mean. Greyness is
//   sum_i |mid_i| * width_i / measure(domain) / |kernel|,
// falling back to sum_i width_i / measure(domain) when the kernel is zero.
Ggn ggn_from_intervals(std::span<const Interval> intervals, const GreyDomain& domain,
                       std::span<const double> probs = {});
Ggn ggn_from_interval(const Interval& iv, const GreyDomain& domain);

// Addition and subtraction weight each operand's greyness by its share of
// |k1| + |k2|; two zero kernels share equally.
Ggn operator+(const Ggn& a, const Ggn& b);
Ggn operator-(const Ggn& a, const Ggn& b);
// Product and quotient take the larger greyness.
Ggn operator*(const Ggn& a, const Ggn& b);
Ggn operator/(const Ggn& a, const Ggn& b);
Ggn operator*(double k, const Ggn& g);
Ggn inverse(const Ggn& g);
Ggn pow(const Ggn& g, double exponent);

// Componentwise comparison with absolute tolerance.
bool approx_equal(const Ggn& a, const Ggn& b, double tol = 1e-9);

// d2 on single grey numbers.
double distance(const Ggn& a, const Ggn& b);
// d on grey vectors; throws DimensionMismatch on unequal lengths.
double distance(std::span<const Ggn> x, std::span<const Ggn> y);

} // namespace greymap
