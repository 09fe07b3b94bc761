#include "udds/uddsketch.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace udds {

namespace {
constexpr double kAlphaSaturation = 1.0 - 1e-12;

bool collapse_would_saturate(double gamma) {
    double g2 = gamma * gamma;
    return !std::isfinite(g2) || alpha_of_gamma(g2) >= kAlphaSaturation;
}
}  // namespace

UddSketch::UddSketch(double alpha0, std::size_t max_buckets)
    : alpha0_(alpha0), acc_(alpha0), max_buckets_(max_buckets) {
    if (max_buckets < 2) {
        throw std::domain_error("UddSketch requires a bucket budget of at least 2");
    }
}

void UddSketch::insert(double x) {
    BucketIndex i = bucket_index(x, acc_);
    store_.add(i, 1);
    while (store_.bucket_count() > max_buckets_) {
        if (collapse_would_saturate(acc_.gamma)) {
            store_.remove_one(i);
            throw SaturationError("insert refused: collapse would saturate gamma");
        }
        uniform_collapse();
    }
}

void UddSketch::remove(double x) {
    store_.remove_one(bucket_index(x, acc_));
}

void UddSketch::uniform_collapse() {
    double g2 = acc_.gamma * acc_.gamma;
    if (!std::isfinite(g2)) {
        throw SaturationError("uniform_collapse: gamma^2 not finitely representable");
    }
    BucketStore collapsed;
    for (const auto& [i, c] : store_) {
        collapsed.add(ceil_half(i), c);
    }
    store_ = std::move(collapsed);
    acc_ = Accuracy::from_gamma(g2);
    ++collapses_;
}

QuantileEstimate UddSketch::quantile(double q) const {
    if (!(q >= 0.0 && q <= 1.0)) {
        throw std::domain_error("q must be in [0, 1]");
    }
    if (store_.empty()) {
        throw EmptySketchError("quantile query on an empty sketch");
    }
    std::uint64_t n = store_.total();
    auto rank = static_cast<std::uint64_t>(std::floor(1.0 + q * static_cast<double>(n - 1)));
    std::uint64_t cumulative = 0;
    for (const auto& [i, c] : store_) {
        cumulative += c;
        if (cumulative >= rank) {
            return {q, bucket_estimate(i, acc_.gamma), acc_.alpha};
        }
    }
    // rank <= n, so the loop always returns.
    throw SketchError("quantile: rank exceeded total count");
}

UddSketch UddSketch::merge(const UddSketch& a, const UddSketch& b) {
    if (a.max_buckets_ != b.max_buckets_) {
        throw IncompatibleSketchError("merge: sketches have different bucket budgets");
    }
    // Compatibility: ln(gamma) ratio must be a power of two (same alpha0
    // lineage, possibly different collapse depths).
    const UddSketch* coarse = &a;
    const UddSketch* fine = &b;
    if (std::log(fine->acc_.gamma) > std::log(coarse->acc_.gamma)) {
        std::swap(coarse, fine);
    }
    double ratio = std::log(coarse->acc_.gamma) / std::log(fine->acc_.gamma);
    double d_real = std::log2(ratio);
    auto d = static_cast<std::uint32_t>(std::llround(d_real));
    double expected = std::exp2(static_cast<double>(d));
    if (std::abs(ratio - expected) > 1e-9 * expected) {
        throw IncompatibleSketchError("merge: gamma values are not on the same collapse lineage");
    }

    UddSketch result = *coarse;
    UddSketch aligned = *fine;
    for (std::uint32_t step = 0; step < d; ++step) {
        aligned.uniform_collapse();
    }
    for (const auto& [i, c] : aligned.store_) {
        result.store_.add(i, c);
    }
    while (result.store_.bucket_count() > result.max_buckets_) {
        if (collapse_would_saturate(result.acc_.gamma)) {
            throw SaturationError("merge: collapse would saturate gamma");
        }
        result.uniform_collapse();
    }
    return result;
}

double UddSketch::alpha_after(double alpha0, std::uint32_t k) {
    if (!(alpha0 > 0.0 && alpha0 < 1.0)) {
        throw std::domain_error("alpha0 must be in (0, 1)");
    }
    if (k == 0) return alpha0;
    // Each collapse squares gamma, doubling artanh(alpha) = ln(gamma)/2.
    return std::tanh(std::exp2(static_cast<double>(k)) * std::atanh(alpha0));
}

double UddSketch::alpha0_for(double alpha_target, std::uint32_t k) {
    if (!(alpha_target > 0.0 && alpha_target < 1.0)) {
        throw std::domain_error("alpha_target must be in (0, 1)");
    }
    if (k < 1) {
        throw std::domain_error("alpha0_for requires k >= 1");
    }
    return std::tanh(std::atanh(alpha_target) / std::exp2(static_cast<double>(k)));
}

std::size_t UddSketch::min_buckets_for(double alpha_target, double x_min, double x_max) {
    if (!(alpha_target > 0.0 && alpha_target < 1.0)) {
        throw std::domain_error("alpha_target must be in (0, 1)");
    }
    if (!(x_min > 0.0) || !(x_min <= x_max) || !std::isfinite(x_max)) {
        throw std::domain_error("min_buckets_for requires 0 < x_min <= x_max, finite");
    }
    double log_ratio = std::log(x_max) - std::log(x_min);
    if (log_ratio <= 0.0) return 2;

    auto alpha_hat = [&](std::size_t m) {
        double g2 = std::exp(2.0 * log_ratio / static_cast<double>(m));
        return (g2 - 1.0) / (g2 + 1.0);
    };
    auto m = static_cast<std::size_t>(
        std::ceil(2.0 * log_ratio / std::log(gamma_of_alpha(alpha_target))));
    if (m < 2) m = 2;
    // The closed form can land one off at an exact boundary; settle by testing.
    while (m > 2 && alpha_hat(m - 1) <= alpha_target) --m;
    while (alpha_hat(m) > alpha_target) ++m;
    return m;
}

UddSketch UddSketch::from_parts(double alpha0, std::uint32_t collapses, std::size_t max_buckets,
                                BucketStore store) {
    UddSketch s(alpha0, max_buckets);
    // Replay the collapse lineage so gamma matches an insert-built sketch bit
    // for bit.
    for (std::uint32_t i = 0; i < collapses; ++i) {
        double g2 = s.acc_.gamma * s.acc_.gamma;
        if (!std::isfinite(g2)) {
            throw SerializationError("from_parts: collapse count saturates gamma");
        }
        s.acc_ = Accuracy::from_gamma(g2);
    }
    s.collapses_ = collapses;
    s.store_ = std::move(store);
    if (s.store_.bucket_count() > max_buckets) {
        throw SerializationError("from_parts: store exceeds the bucket budget");
    }
    return s;
}

}  // namespace udds
