#ifndef UDDS_SIGNED_SKETCH_HPP
#define UDDS_SIGNED_SKETCH_HPP

#include <cstdint>

#include "udds/uddsketch.hpp"

namespace udds {

// Covers all of R with two UddSketches (negatives stored negated) and an
// exact counter for zero, which no logarithmic bucket can hold.
class SignedSketch {
public:
    SignedSketch(double alpha0, std::size_t max_buckets);

    void insert(double x);
    QuantileEstimate quantile(double q) const;

    const UddSketch& positives() const { return positives_; }
    const UddSketch& negatives() const { return negatives_; }
    std::uint64_t zero_count() const { return zero_count_; }
    std::uint64_t total() const {
        return positives_.total() + negatives_.total() + zero_count_;
    }

    static SignedSketch from_parts(UddSketch positives, UddSketch negatives,
                                   std::uint64_t zero_count);

private:
    UddSketch positives_;
    UddSketch negatives_;
    std::uint64_t zero_count_ = 0;
};

}  // namespace udds

#endif
