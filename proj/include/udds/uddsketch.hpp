#ifndef UDDS_UDDSKETCH_HPP
#define UDDS_UDDSKETCH_HPP

#include <cstdint>
#include <cstddef>

#include "udds/bucket_math.hpp"
#include "udds/bucket_store.hpp"

namespace udds {

struct QuantileEstimate {
    double q;
    double value;
    double guaranteed_alpha;
};

struct SketchConfig {
    double alpha0;
    double current_alpha;
    double current_gamma;
    std::size_t max_buckets;
    std::uint32_t collapses;
};

// Quantile sketch with uniform collapse. Starts at accuracy alpha0 and, each
// time the bucket budget is exceeded, halves the index space (gamma -> gamma^2,
// alpha -> 2*alpha/(1+alpha^2)) until the budget holds again.
class UddSketch {
public:
    UddSketch(double alpha0, std::size_t max_buckets);

    void insert(double x);
    void remove(double x);

    // Collapses every bucket pair (2j-1, 2j) into index j. Count-preserving;
    // legal on any sketch including an empty one.
    void uniform_collapse();

    QuantileEstimate quantile(double q) const;

    static UddSketch merge(const UddSketch& a, const UddSketch& b);

    double alpha0() const { return alpha0_; }
    double current_alpha() const { return acc_.alpha; }
    double current_gamma() const { return acc_.gamma; }
    std::size_t max_buckets() const { return max_buckets_; }
    std::uint32_t collapses() const { return collapses_; }
    std::uint64_t total() const { return store_.total(); }
    std::size_t bucket_count() const { return store_.bucket_count(); }
    const BucketStore& store() const { return store_; }
    SketchConfig config() const {
        return {alpha0_, acc_.alpha, acc_.gamma, max_buckets_, collapses_};
    }

    // Accuracy after k collapses starting from alpha0:
    // tanh(2^(k-1) * artanh(alpha0)), with alpha_after(a, 0) = a.
    static double alpha_after(double alpha0, std::uint32_t k);

    // Starting accuracy that degrades to alpha_target after k collapses:
    // tanh(artanh(alpha_target) / 2^(k-1)).
    static double alpha0_for(double alpha_target, std::uint32_t k = kDefaultCollapseAllowance);

    // Smallest budget m >= 2 such that covering [x_min, x_max] with m buckets
    // keeps the worst-case accuracy (gt^2-1)/(gt^2+1), gt = (x_max/x_min)^(1/m),
    // at or below alpha_target.
    static std::size_t min_buckets_for(double alpha_target, double x_min, double x_max);

    static constexpr std::uint32_t kDefaultCollapseAllowance = 10;

    // Internal: rebuilds a sketch from serialized state. Counts must be
    // consistent with a valid collapse history.
    static UddSketch from_parts(double alpha0, std::uint32_t collapses, std::size_t max_buckets,
                                BucketStore store);

private:
    void collapse_to_budget();

    double alpha0_;
    Accuracy acc_;
    std::size_t max_buckets_;
    std::uint32_t collapses_ = 0;
    BucketStore store_;
};

}  // namespace udds

#endif
