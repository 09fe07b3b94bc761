#include "udds/serialize.hpp"

#include <bit>
#include <cstring>
#include <fstream>

namespace udds {

namespace {

constexpr std::uint32_t kMagic = 0x53444455;  // "UDDS"
constexpr std::uint32_t kVersion = 1;

class Writer {
public:
    void u8(std::uint8_t v) { bytes_.push_back(v); }
    void u32(std::uint32_t v) { raw(&v, 4); }
    void u64(std::uint64_t v) { raw(&v, 8); }
    void i64(std::int64_t v) { raw(&v, 8); }
    void f64(double v) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, 8);
        u64(bits);
    }
    std::vector<std::uint8_t> take() { return std::move(bytes_); }

private:
    void raw(const void* p, std::size_t n) {
        static_assert(std::endian::native == std::endian::little);
        const auto* b = static_cast<const std::uint8_t*>(p);
        bytes_.insert(bytes_.end(), b, b + n);
    }
    std::vector<std::uint8_t> bytes_;
};

class Reader {
public:
    explicit Reader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}

    std::uint8_t u8() { return *raw(1); }
    std::uint32_t u32() {
        std::uint32_t v;
        std::memcpy(&v, raw(4), 4);
        return v;
    }
    std::uint64_t u64() {
        std::uint64_t v;
        std::memcpy(&v, raw(8), 8);
        return v;
    }
    std::int64_t i64() {
        std::int64_t v;
        std::memcpy(&v, raw(8), 8);
        return v;
    }
    double f64() {
        std::uint64_t bits = u64();
        double v;
        std::memcpy(&v, &bits, 8);
        return v;
    }
    void expect_end() const {
        if (pos_ != bytes_.size()) {
            throw SerializationError("trailing bytes in sketch record");
        }
    }

private:
    const std::uint8_t* raw(std::size_t n) {
        if (pos_ + n > bytes_.size()) {
            throw SerializationError("truncated sketch record");
        }
        const std::uint8_t* p = bytes_.data() + pos_;
        pos_ += n;
        return p;
    }
    const std::vector<std::uint8_t>& bytes_;
    std::size_t pos_ = 0;
};

void write_header(Writer& w, SketchKind kind) {
    w.u32(kMagic);
    w.u32(kVersion);
    w.u8(static_cast<std::uint8_t>(kind));
}

SketchKind read_header(Reader& r) {
    if (r.u32() != kMagic) throw SerializationError("bad magic, not a sketch file");
    if (r.u32() != kVersion) throw SerializationError("unsupported format version");
    std::uint8_t kind = r.u8();
    if (kind > 2) throw SerializationError("unknown sketch kind");
    return static_cast<SketchKind>(kind);
}

void write_store(Writer& w, const BucketStore& store) {
    w.u64(store.total());
    w.u64(store.bucket_count());
    for (const auto& [i, c] : store) {
        w.i64(i);
        w.u64(c);
    }
}

BucketStore read_store(Reader& r) {
    std::uint64_t total = r.u64();
    std::uint64_t n_entries = r.u64();
    BucketStore store;
    for (std::uint64_t k = 0; k < n_entries; ++k) {
        std::int64_t i = r.i64();
        std::uint64_t c = r.u64();
        if (c == 0) throw SerializationError("zero-count bucket in record");
        store.add(i, c);
    }
    if (store.total() != total) {
        throw SerializationError("stored total does not match entry counts");
    }
    return store;
}

void write_udd_payload(Writer& w, const UddSketch& s) {
    w.f64(s.alpha0());
    w.u32(s.collapses());
    w.u64(s.max_buckets());
    write_store(w, s.store());
}

UddSketch read_udd_payload(Reader& r) {
    double alpha0 = r.f64();
    std::uint32_t k = r.u32();
    std::uint64_t m = r.u64();
    return UddSketch::from_parts(alpha0, k, static_cast<std::size_t>(m), read_store(r));
}

}  // namespace

std::vector<std::uint8_t> serialize(const UddSketch& s) {
    Writer w;
    write_header(w, SketchKind::kUdd);
    write_udd_payload(w, s);
    return w.take();
}

std::vector<std::uint8_t> serialize(const DdSketch& s) {
    Writer w;
    write_header(w, SketchKind::kDd);
    w.u8(s.strategy() == CollapseStrategy::kLowest ? 0 : 1);
    w.f64(s.alpha());
    w.u64(s.max_buckets());
    w.u64(s.collapse_count());
    w.u8(s.collapsed_boundary_index() ? 1 : 0);
    w.i64(s.collapsed_boundary_index().value_or(0));
    write_store(w, s.store());
    return w.take();
}

std::vector<std::uint8_t> serialize(const SignedSketch& s) {
    Writer w;
    write_header(w, SketchKind::kSigned);
    w.u64(s.zero_count());
    write_udd_payload(w, s.positives());
    write_udd_payload(w, s.negatives());
    return w.take();
}

UddSketch deserialize_udd(const std::vector<std::uint8_t>& bytes) {
    Reader r(bytes);
    if (read_header(r) != SketchKind::kUdd) {
        throw SerializationError("record is not a UddSketch");
    }
    UddSketch s = read_udd_payload(r);
    r.expect_end();
    return s;
}

DdSketch deserialize_dd(const std::vector<std::uint8_t>& bytes) {
    Reader r(bytes);
    if (read_header(r) != SketchKind::kDd) {
        throw SerializationError("record is not a DdSketch");
    }
    std::uint8_t strategy_tag = r.u8();
    if (strategy_tag > 1) throw SerializationError("unknown collapse strategy tag");
    double alpha = r.f64();
    std::uint64_t m = r.u64();
    std::uint64_t collapse_count = r.u64();
    bool has_boundary = r.u8() != 0;
    std::int64_t boundary = r.i64();
    BucketStore store = read_store(r);
    r.expect_end();
    return DdSketch::from_parts(
        alpha, static_cast<std::size_t>(m),
        strategy_tag == 0 ? CollapseStrategy::kLowest : CollapseStrategy::kHighest, collapse_count,
        has_boundary ? std::optional<BucketIndex>(boundary) : std::nullopt, std::move(store));
}

SignedSketch deserialize_signed(const std::vector<std::uint8_t>& bytes) {
    Reader r(bytes);
    if (read_header(r) != SketchKind::kSigned) {
        throw SerializationError("record is not a SignedSketch");
    }
    std::uint64_t zero_count = r.u64();
    UddSketch positives = read_udd_payload(r);
    UddSketch negatives = read_udd_payload(r);
    r.expect_end();
    return SignedSketch::from_parts(std::move(positives), std::move(negatives), zero_count);
}

SketchKind peek_kind(const std::vector<std::uint8_t>& bytes) {
    Reader r(bytes);
    return read_header(r);
}

void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw SerializationError("cannot open " + path + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw SerializationError("short write to " + path);
}

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SerializationError("cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace udds
