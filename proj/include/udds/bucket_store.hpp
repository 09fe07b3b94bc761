#ifndef UDDS_BUCKET_STORE_HPP
#define UDDS_BUCKET_STORE_HPP

#include <cstdint>
#include <limits>
#include <map>

#include "udds/bucket_math.hpp"
#include "udds/errors.hpp"

namespace udds {

// Sparse bucket-index -> count map. Counts are strictly positive; a bucket
// whose count reaches zero is erased. total() always equals the sum of the
// stored counts. Iteration is in ascending index order (std::map).
class BucketStore {
public:
    using Map = std::map<BucketIndex, std::uint64_t>;
    using const_iterator = Map::const_iterator;

    void add(BucketIndex i, std::uint64_t c = 1) {
        if (c == 0) {
            throw std::domain_error("BucketStore::add requires count >= 1");
        }
        std::uint64_t& slot = entries_[i];
        if (slot > std::numeric_limits<std::uint64_t>::max() - c ||
            total_ > std::numeric_limits<std::uint64_t>::max() - c) {
            if (slot == 0) entries_.erase(i);
            throw CountOverflowError("BucketStore::add would overflow a 64-bit count");
        }
        slot += c;
        total_ += c;
    }

    void remove_one(BucketIndex i) {
        auto it = entries_.find(i);
        if (it == entries_.end()) {
            throw MissingBucketError("remove_one: bucket " + std::to_string(i) + " not present");
        }
        if (--it->second == 0) {
            entries_.erase(it);
        }
        --total_;
    }

    // Removes bucket i entirely and returns its count (0 if absent).
    // total() is reduced accordingly; used by the DDSketch collapse moves.
    std::uint64_t take(BucketIndex i) {
        auto it = entries_.find(i);
        if (it == entries_.end()) return 0;
        std::uint64_t c = it->second;
        entries_.erase(it);
        total_ -= c;
        return c;
    }

    std::uint64_t count(BucketIndex i) const {
        auto it = entries_.find(i);
        return it == entries_.end() ? 0 : it->second;
    }

    std::uint64_t total() const { return total_; }
    std::size_t bucket_count() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    const_iterator begin() const { return entries_.begin(); }
    const_iterator end() const { return entries_.end(); }
    const Map& entries() const { return entries_; }

    bool operator==(const BucketStore& other) const {
        return total_ == other.total_ && entries_ == other.entries_;
    }

private:
    Map entries_;
    std::uint64_t total_ = 0;
};

}  // namespace udds

#endif
