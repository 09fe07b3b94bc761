#include <doctest.h>

#include <cstdio>
#include <random>

#include "udds/serialize.hpp"

using namespace udds;

TEST_CASE("udd round-trip is bit-exact across states") {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> log_x(std::log(1e-6), std::log(1e6));
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t m = 2 + rng() % 127;
        UddSketch s(UddSketch::alpha0_for(0.01, 1 + rng() % 12), m);
        std::size_t n = rng() % 2000;
        for (std::size_t i = 0; i < n; ++i) s.insert(std::exp(log_x(rng)));

        if (trial % 3 == 0 && n > 0) {
            // include merged states
            UddSketch other(s.alpha0(), m);
            for (int i = 0; i < 100; ++i) other.insert(std::exp(log_x(rng)));
            s = UddSketch::merge(s, other);
        }

        auto bytes = serialize(s);
        UddSketch loaded = deserialize_udd(bytes);
        CHECK(serialize(loaded) == bytes);
        CHECK(loaded.store() == s.store());
        CHECK(loaded.collapses() == s.collapses());
        CHECK(loaded.current_gamma() == s.current_gamma());
        CHECK(loaded.current_alpha() == s.current_alpha());
        if (s.total() > 0) {
            CHECK(loaded.quantile(0.5).value == s.quantile(0.5).value);
        }
    }
}

TEST_CASE("dd round-trip keeps the strategy tag and boundary") {
    DdSketch s(0.5, 2, CollapseStrategy::kHighest);
    s.insert(1.0);
    s.insert(8.0);
    s.insert(200.0);
    auto bytes = serialize(s);
    DdSketch loaded = deserialize_dd(bytes);
    CHECK(serialize(loaded) == bytes);
    CHECK(loaded.strategy() == CollapseStrategy::kHighest);
    CHECK(loaded.collapse_count() == 1);
    REQUIRE(loaded.collapsed_boundary_index().has_value());
    CHECK(*loaded.collapsed_boundary_index() == 2);
    CHECK(loaded.store() == s.store());
}

TEST_CASE("signed round-trip") {
    SignedSketch s(0.01, 64);
    for (double v : {-3.0, -1.0, 0.0, 0.0, 1.0, 3.0}) s.insert(v);
    auto bytes = serialize(s);
    SignedSketch loaded = deserialize_signed(bytes);
    CHECK(serialize(loaded) == bytes);
    CHECK(loaded.zero_count() == 2);
    CHECK(loaded.total() == 6);
    CHECK(loaded.quantile(0.5).value == s.quantile(0.5).value);
}

TEST_CASE("corrupt records are rejected") {
    UddSketch s(0.01, 64);
    s.insert(1.0);
    auto bytes = serialize(s);

    auto truncated = bytes;
    truncated.resize(truncated.size() - 3);
    CHECK_THROWS_AS(deserialize_udd(truncated), SerializationError);

    auto bad_magic = bytes;
    bad_magic[0] ^= 0xFF;
    CHECK_THROWS_AS(deserialize_udd(bad_magic), SerializationError);

    auto wrong_kind = serialize(DdSketch(0.01, 64, CollapseStrategy::kLowest));
    CHECK_THROWS_AS(deserialize_udd(wrong_kind), SerializationError);
    CHECK(peek_kind(wrong_kind) == SketchKind::kDd);

    // tamper with the stored total
    auto bad_total = bytes;
    bad_total[29] ^= 0x01;  // low byte of the total field
    CHECK_THROWS_AS(deserialize_udd(bad_total), SerializationError);
}

TEST_CASE("file round-trip") {
    UddSketch s(0.001, 128);
    for (int i = 1; i <= 100; ++i) s.insert(static_cast<double>(i));
    auto bytes = serialize(s);
    std::string path = "test_sketch_roundtrip.udds";
    write_file(path, bytes);
    CHECK(read_file(path) == bytes);
    std::remove(path.c_str());
}
