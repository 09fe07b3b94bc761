#ifndef UDDS_BUCKET_MATH_HPP
#define UDDS_BUCKET_MATH_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "udds/errors.hpp"

namespace udds {

using BucketIndex = std::int64_t;

// gamma = (1 + alpha) / (1 - alpha)
inline double gamma_of_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::domain_error("alpha must be in (0, 1)");
    }
    return (1.0 + alpha) / (1.0 - alpha);
}

// alpha = (gamma - 1) / (gamma + 1)
inline double alpha_of_gamma(double gamma) {
    if (!(gamma > 1.0)) {
        throw std::domain_error("gamma must be > 1");
    }
    return (gamma - 1.0) / (gamma + 1.0);
}

// Relative accuracy / log base pair. gamma is derived from alpha once and
// cached together with 1/ln(gamma) for fast index computation.
struct Accuracy {
    double alpha;
    double gamma;
    double inv_ln_gamma;

    explicit Accuracy(double a)
        : alpha(a), gamma(gamma_of_alpha(a)), inv_ln_gamma(1.0 / std::log(gamma)) {}

    static Accuracy from_gamma(double g) {
        Accuracy acc(alpha_of_gamma(g));
        acc.gamma = g;
        acc.inv_ln_gamma = 1.0 / std::log(g);
        return acc;
    }
};

// i = ceil(log_gamma(x)); values in (gamma^(i-1), gamma^i] share a bucket.
inline BucketIndex bucket_index(double x, const Accuracy& acc) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw std::domain_error("bucket_index requires a finite positive value");
    }
    return static_cast<BucketIndex>(std::ceil(std::log(x) * acc.inv_ln_gamma));
}

inline BucketIndex bucket_index(double x, double gamma) {
    if (!(gamma > 1.0)) {
        throw std::domain_error("gamma must be > 1");
    }
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw std::domain_error("bucket_index requires a finite positive value");
    }
    return static_cast<BucketIndex>(std::ceil(std::log(x) / std::log(gamma)));
}

// Representative value of bucket i: 2*gamma^i/(gamma+1), the point at equal
// relative distance from both bucket edges. Worst-case relative error over
// the bucket interval is then exactly alpha.
inline double bucket_estimate(BucketIndex i, double gamma) {
    if (!(gamma > 1.0)) {
        throw std::domain_error("gamma must be > 1");
    }
    double v = 2.0 * std::pow(gamma, static_cast<double>(i)) / (gamma + 1.0);
    if (!std::isfinite(v) || v <= 0.0) {
        throw SketchError("bucket_estimate: gamma^i not finitely representable");
    }
    return v;
}

// ceil(i/2) for signed integers without going through floating point.
inline BucketIndex ceil_half(BucketIndex i) {
    return i >= 0 ? (i + 1) / 2 : i / 2;
}

}  // namespace udds

#endif
