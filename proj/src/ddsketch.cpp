#include "udds/ddsketch.hpp"

#include <cmath>
#include <stdexcept>

namespace udds {

DdSketch::DdSketch(double alpha, std::size_t max_buckets, CollapseStrategy strategy)
    : acc_(alpha), max_buckets_(max_buckets), strategy_(strategy) {
    if (max_buckets < 2) {
        throw std::domain_error("DdSketch requires a bucket budget of at least 2");
    }
}

void DdSketch::insert(double x) {
    store_.add(bucket_index(x, acc_), 1);
    if (store_.bucket_count() <= max_buckets_) return;

    // Each collapse merges one bucket pair, reducing the count by exactly one.
    if (strategy_ == CollapseStrategy::kLowest) {
        auto it = store_.begin();
        BucketIndex y = it->first;
        BucketIndex z = std::next(it)->first;
        store_.add(z, store_.take(y));
        boundary_ = z;
    } else {
        auto it = store_.end();
        BucketIndex z = std::prev(it)->first;
        BucketIndex y = std::prev(it, 2)->first;
        store_.add(y, store_.take(z));
        boundary_ = y;
    }
    ++collapse_count_;
}

DdQuantileEstimate DdSketch::quantile(double q) const {
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
            bool collapsed = collapse_count_ > 0 && boundary_ && *boundary_ == i;
            return {q, bucket_estimate(i, acc_.gamma), acc_.alpha, collapsed};
        }
    }
    throw SketchError("quantile: rank exceeded total count");
}

DdSketch DdSketch::from_parts(double alpha, std::size_t max_buckets, CollapseStrategy strategy,
                              std::uint64_t collapse_count, std::optional<BucketIndex> boundary,
                              BucketStore store) {
    DdSketch s(alpha, max_buckets, strategy);
    if (store.bucket_count() > max_buckets) {
        throw SerializationError("from_parts: store exceeds the bucket budget");
    }
    s.collapse_count_ = collapse_count;
    s.boundary_ = boundary;
    s.store_ = std::move(store);
    return s;
}

DualDdSketch::DualDdSketch(double alpha, std::size_t max_buckets)
    : low_(alpha, std::max<std::size_t>(2, max_buckets / 2), CollapseStrategy::kHighest),
      high_(alpha, std::max<std::size_t>(2, (max_buckets + 1) / 2), CollapseStrategy::kLowest) {}

void DualDdSketch::insert(double x) {
    low_.insert(x);
    high_.insert(x);
}

DdQuantileEstimate DualDdSketch::quantile(double q) const {
    DdQuantileEstimate from_low = low_.quantile(q);
    DdQuantileEstimate from_high = high_.quantile(q);
    if (from_low.from_collapsed_bucket != from_high.from_collapsed_bucket) {
        return from_low.from_collapsed_bucket ? from_high : from_low;
    }
    if (low_.collapse_count() != high_.collapse_count()) {
        return low_.collapse_count() < high_.collapse_count() ? from_low : from_high;
    }
    // Tie on collapse counts: prefer the L-strategy half.
    return from_high;
}

}  // namespace udds
