#ifndef UDDS_DDSKETCH_HPP
#define UDDS_DDSKETCH_HPP

#include <cstdint>
#include <cstddef>
#include <optional>

#include "udds/bucket_math.hpp"
#include "udds/bucket_store.hpp"
#include "udds/uddsketch.hpp"

namespace udds {

enum class CollapseStrategy : std::uint8_t {
    kLowest,   // merge the two lowest-index buckets into the higher one
    kHighest,  // merge the two highest-index buckets into the lower one
};

struct DdQuantileEstimate {
    double q;
    double value;
    double guaranteed_alpha;  // meaningful only when !from_collapsed_bucket
    bool from_collapsed_bucket;
};

// Original DDSketch: fixed gamma, budget enforced by pairwise collapse at one
// end of the index range. The bucket that absorbed collapses no longer
// carries the alpha guarantee; queries answered from it are flagged.
class DdSketch {
public:
    DdSketch(double alpha, std::size_t max_buckets, CollapseStrategy strategy);

    void insert(double x);
    DdQuantileEstimate quantile(double q) const;

    double alpha() const { return acc_.alpha; }
    double gamma() const { return acc_.gamma; }
    std::size_t max_buckets() const { return max_buckets_; }
    CollapseStrategy strategy() const { return strategy_; }
    std::uint64_t collapse_count() const { return collapse_count_; }
    std::optional<BucketIndex> collapsed_boundary_index() const { return boundary_; }
    std::uint64_t total() const { return store_.total(); }
    std::size_t bucket_count() const { return store_.bucket_count(); }
    const BucketStore& store() const { return store_; }

    static DdSketch from_parts(double alpha, std::size_t max_buckets, CollapseStrategy strategy,
                               std::uint64_t collapse_count, std::optional<BucketIndex> boundary,
                               BucketStore store);

private:
    Accuracy acc_;
    std::size_t max_buckets_;
    CollapseStrategy strategy_;
    std::uint64_t collapse_count_ = 0;
    std::optional<BucketIndex> boundary_;
    BucketStore store_;
};

// DDSketch D: budget split across a low-preserving half (strategy H) and a
// high-preserving half (strategy L); every value goes to both, queries pick
// the half whose answer is still guaranteed.
class DualDdSketch {
public:
    DualDdSketch(double alpha, std::size_t max_buckets);

    void insert(double x);
    DdQuantileEstimate quantile(double q) const;

    const DdSketch& low_half() const { return low_; }
    const DdSketch& high_half() const { return high_; }
    std::uint64_t total() const { return low_.total(); }
    std::uint64_t collapse_count() const { return low_.collapse_count() + high_.collapse_count(); }
    std::size_t bucket_count() const { return low_.bucket_count() + high_.bucket_count(); }
    double alpha() const { return low_.alpha(); }

private:
    DdSketch low_;   // keeps low buckets accurate (collapses highest)
    DdSketch high_;  // keeps high buckets accurate (collapses lowest)
};

}  // namespace udds

#endif
