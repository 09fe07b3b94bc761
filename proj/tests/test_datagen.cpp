#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "udds/datagen.hpp"

using namespace udds;

namespace {

// Closed-form CDFs for the families that have one; used by the KS check.
double cdf(Family f, double p1, double p2, double x) {
    switch (f) {
        case Family::kUniform:
            return std::clamp((x - p1) / (p2 - p1), 0.0, 1.0);
        case Family::kExponential:
            return x <= 0 ? 0.0 : 1.0 - std::exp(-p1 * x);
        case Family::kPareto:
            return x <= p1 ? 0.0 : 1.0 - std::pow(p1 / x, p2);
        case Family::kLaplace:
            return x < p1 ? 0.5 * std::exp((x - p1) / p2)
                          : 1.0 - 0.5 * std::exp(-(x - p1) / p2);
        case Family::kLogistic:
            return 1.0 / (1.0 + std::exp(-(x - p1) / p2));
        case Family::kGumbel:
        case Family::kExtremeValue:
            return std::exp(-std::exp(-(x - p1) / p2));
        default:
            throw std::logic_error("no closed-form CDF");
    }
}

double ks_statistic(std::vector<double> sample, Family f, double p1, double p2) {
    std::sort(sample.begin(), sample.end());
    double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        double c = cdf(f, p1, p2, sample[i]);
        d = std::max(d, std::abs(c - static_cast<double>(i) / n));
        d = std::max(d, std::abs(c - static_cast<double>(i + 1) / n));
    }
    return d;
}

}  // namespace

TEST_CASE("fifteen standard datasets with distinct seeds") {
    auto specs = standard_datasets(1000, 7);
    CHECK(specs.size() == 15);
    for (std::size_t i = 1; i < specs.size(); ++i) {
        CHECK(specs[i].seed != specs[0].seed);
    }
    CHECK(dataset_by_name("lognormal", 10, 1).family == Family::kLognormal);
    CHECK_THROWS_AS(dataset_by_name("nosuch", 10, 1), std::invalid_argument);
}

TEST_CASE("generation is deterministic per (spec, seed)") {
    for (const auto& spec : standard_datasets(500, 99)) {
        Generator g1(spec);
        Generator g2(spec);
        CHECK(g1.generate() == g2.generate());
    }
    DatasetSpec a = dataset_by_name("normal", 500, 1);
    DatasetSpec b = dataset_by_name("normal", 500, 2);
    CHECK(Generator(a).generate() != Generator(b).generate());
}

TEST_CASE("every value is strictly positive") {
    for (const auto& spec : standard_datasets(20000, 5)) {
        Generator gen(spec);
        for (double v : gen.generate()) {
            REQUIRE(v > 0.0);
            REQUIRE(std::isfinite(v));
        }
    }
}

TEST_CASE("uniform sample spans the expected range") {
    DatasetSpec spec = dataset_by_name("uniform", 1000000, 3);
    auto values = Generator(spec).generate();
    auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    CHECK(*mn < 0.1);            // min of order 1e-3 * scale at this n
    CHECK(*mx > 2.49e4);
    CHECK(*mx < 2.5e4);
}

TEST_CASE("normal sample mean and range") {
    DatasetSpec spec = dataset_by_name("normal", 1000000, 4);
    auto values = Generator(spec).generate();
    double sum = 0;
    for (double v : values) sum += v;
    CHECK(sum / static_cast<double>(values.size()) == doctest::Approx(50.0).epsilon(4e-4));
    auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    CHECK(*mn > 35.0);
    CHECK(*mx < 65.0);
}

TEST_CASE("exponential empirical median") {
    DatasetSpec spec = dataset_by_name("exponential", 1000000, 6);
    auto values = Generator(spec).generate();
    std::nth_element(values.begin(), values.begin() + values.size() / 2, values.end());
    double median = values[values.size() / 2];
    double expected = std::log(2.0) / 0.5;
    CHECK(std::abs(median - expected) <= 0.01 * expected);
}

TEST_CASE("KS check against closed-form CDFs") {
    // two-sided critical value at significance 1e-6
    const std::size_t n = 100000;
    double critical = std::sqrt(-std::log(1e-6 / 2.0) / (2.0 * static_cast<double>(n)));
    for (const char* name :
         {"uniform", "exponential", "pareto", "logistic", "laplace", "gumbel", "extremevalue"}) {
        DatasetSpec spec = dataset_by_name(name, n, 8);
        auto values = Generator(spec).generate();
        double d = ks_statistic(values, spec.family, spec.p1, spec.p2);
        INFO(name);
        CHECK(d < critical);
    }
}

TEST_CASE("text and binary files round-trip") {
    DatasetSpec spec = dataset_by_name("gamma", 200, 11);
    auto values = Generator(spec).generate();

    write_binary_dataset("test_ds.bin", spec, values);
    CHECK(read_dataset("test_ds.bin") == values);

    write_text_dataset("test_ds.txt", spec, values);
    auto text_back = read_dataset("test_ds.txt");
    REQUIRE(text_back.size() == values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        CHECK(text_back[i] == values[i]);  // max_digits10 round-trips exactly
    }
    std::remove("test_ds.bin");
    std::remove("test_ds.txt");
}
