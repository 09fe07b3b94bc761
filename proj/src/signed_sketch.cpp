#include "udds/signed_sketch.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace udds {

SignedSketch::SignedSketch(double alpha0, std::size_t max_buckets)
    : positives_(alpha0, max_buckets), negatives_(alpha0, max_buckets) {}

void SignedSketch::insert(double x) {
    if (!std::isfinite(x)) {
        throw std::domain_error("SignedSketch::insert requires a finite value");
    }
    if (x > 0.0) {
        positives_.insert(x);
    } else if (x < 0.0) {
        negatives_.insert(-x);
    } else {
        ++zero_count_;
    }
}

QuantileEstimate SignedSketch::quantile(double q) const {
    if (!(q >= 0.0 && q <= 1.0)) {
        throw std::domain_error("q must be in [0, 1]");
    }
    std::uint64_t n = total();
    if (n == 0) {
        throw EmptySketchError("quantile query on an empty sketch");
    }
    auto rank = static_cast<std::uint64_t>(std::floor(1.0 + q * static_cast<double>(n - 1)));
    double guaranteed = 0.0;
    if (positives_.total() > 0) guaranteed = positives_.current_alpha();
    if (negatives_.total() > 0) guaranteed = std::max(guaranteed, negatives_.current_alpha());

    // Global ordering: negatives by descending index (most negative first),
    // then zeros, then positives ascending.
    std::uint64_t cumulative = 0;
    const auto& neg = negatives_.store();
    for (auto it = neg.entries().rbegin(); it != neg.entries().rend(); ++it) {
        cumulative += it->second;
        if (cumulative >= rank) {
            return {q, -bucket_estimate(it->first, negatives_.current_gamma()), guaranteed};
        }
    }
    cumulative += zero_count_;
    if (cumulative >= rank) {
        return {q, 0.0, guaranteed};
    }
    for (const auto& [i, c] : positives_.store()) {
        cumulative += c;
        if (cumulative >= rank) {
            return {q, bucket_estimate(i, positives_.current_gamma()), guaranteed};
        }
    }
    throw SketchError("quantile: rank exceeded total count");
}

SignedSketch SignedSketch::from_parts(UddSketch positives, UddSketch negatives,
                                      std::uint64_t zero_count) {
    SignedSketch s(positives.alpha0(), positives.max_buckets());
    s.positives_ = std::move(positives);
    s.negatives_ = std::move(negatives);
    s.zero_count_ = zero_count;
    return s;
}

}  // namespace udds
