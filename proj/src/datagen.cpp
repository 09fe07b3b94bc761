#include "udds/datagen.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace udds {

namespace {

struct FamilyInfo {
    Family family;
    const char* name;
    double p1;
    double p2;
};

constexpr FamilyInfo kFamilies[] = {
    {Family::kBetaL, "betaL", 5.0, 1.5},
    {Family::kBetaR, "betaR", 1.5, 5.0},
    {Family::kChiSquare, "chisquare", 5.0, 0.0},
    {Family::kExponential, "exponential", 0.5, 0.0},
    {Family::kExtremeValue, "extremevalue", 20.0, 2.0},
    {Family::kGamma, "gamma", 2.0, 4.0},
    {Family::kGumbel, "gumbel", 100.0, 4.0},
    {Family::kHalfNormal, "halfnormal", 0.5, 0.0},
    {Family::kInverseGaussian, "inversegaussian", 10.0, 5.0},
    {Family::kLaplace, "laplace", 200.0, 10.0},
    {Family::kLogistic, "logistic", 200.0, 10.0},
    {Family::kLognormal, "lognormal", 1.0, 1.5},
    {Family::kNormal, "normal", 50.0, 2.0},
    {Family::kPareto, "pareto", 2.0, 0.5},
    {Family::kUniform, "uniform", 0.0, 2.5e4},
};

const FamilyInfo& info_of(Family f) {
    for (const auto& fi : kFamilies) {
        if (fi.family == f) return fi;
    }
    throw std::invalid_argument("unknown distribution family");
}

}  // namespace

std::vector<DatasetSpec> standard_datasets(std::uint64_t n, std::uint64_t seed) {
    std::vector<DatasetSpec> specs;
    std::uint64_t offset = 0;
    for (const auto& fi : kFamilies) {
        // Distinct derived seed per dataset so "all" runs do not correlate.
        specs.push_back({fi.name, fi.family, fi.p1, fi.p2, n, seed + offset++});
    }
    return specs;
}

DatasetSpec dataset_by_name(const std::string& name, std::uint64_t n, std::uint64_t seed) {
    for (const auto& fi : kFamilies) {
        if (name == fi.name) {
            return {fi.name, fi.family, fi.p1, fi.p2, n, seed};
        }
    }
    std::string valid;
    for (const auto& fi : kFamilies) {
        if (!valid.empty()) valid += ", ";
        valid += fi.name;
    }
    throw std::invalid_argument("unknown dataset '" + name + "'; valid names: " + valid);
}

std::string family_name(Family f) { return info_of(f).name; }

std::string family_params(Family f) {
    const FamilyInfo& fi = info_of(f);
    std::ostringstream out;
    out << fi.p1;
    switch (f) {
        case Family::kChiSquare:
        case Family::kExponential:
        case Family::kHalfNormal:
            break;
        default:
            out << ";" << fi.p2;
    }
    return out.str();
}

Generator::Generator(const DatasetSpec& spec) : spec_(spec), rng_(spec.seed) {
    if (spec.n == 0) {
        throw std::invalid_argument("dataset size must be positive");
    }
}

double Generator::uniform01() {
    // 53-bit mantissa, shifted off zero: strictly inside (0, 1).
    return (static_cast<double>(rng_() >> 11) + 0.5) * 0x1.0p-53;
}

double Generator::normal(double mu, double sigma) {
    // Box-Muller, cosine branch only; determinism beats reusing the spare.
    double u1 = uniform01();
    double u2 = uniform01();
    return mu + sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

double Generator::gamma_dist(double shape, double scale) {
    // Marsaglia-Tsang squeeze; shape < 1 boosted via the power transform.
    if (shape < 1.0) {
        double g = gamma_dist(shape + 1.0, scale);
        return g * std::pow(uniform01(), 1.0 / shape);
    }
    double d = shape - 1.0 / 3.0;
    double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x = normal(0.0, 1.0);
        double t = 1.0 + c * x;
        if (t <= 0.0) continue;
        double v = t * t * t;
        double u = uniform01();
        double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v * scale;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v * scale;
    }
}

double Generator::inverse_gaussian(double mu, double lambda) {
    // Michael-Schucany-Haas.
    double z = normal(0.0, 1.0);
    double y = z * z;
    double x = mu + mu * mu * y / (2.0 * lambda) -
               mu / (2.0 * lambda) * std::sqrt(4.0 * mu * lambda * y + mu * mu * y * y);
    double u = uniform01();
    return u <= mu / (mu + x) ? x : mu * mu / x;
}

double Generator::draw() {
    const double p1 = spec_.p1;
    const double p2 = spec_.p2;
    switch (spec_.family) {
        case Family::kUniform:
            return p1 + (p2 - p1) * uniform01();
        case Family::kExponential:
            return -std::log(uniform01()) / p1;
        case Family::kPareto:
            // p1 = scale x_m, p2 = shape.
            return p1 * std::pow(uniform01(), -1.0 / p2);
        case Family::kLaplace: {
            double u = uniform01() - 0.5;
            return p1 - p2 * std::copysign(std::log1p(-2.0 * std::abs(u)), u);
        }
        case Family::kLogistic: {
            double u = uniform01();
            return p1 + p2 * std::log(u / (1.0 - u));
        }
        case Family::kGumbel:
        case Family::kExtremeValue:
            return p1 - p2 * std::log(-std::log(uniform01()));
        case Family::kNormal:
            return normal(p1, p2);
        case Family::kHalfNormal:
            return std::abs(normal(0.0, p1));
        case Family::kLognormal:
            return std::exp(normal(p1, p2));
        case Family::kChiSquare:
            return gamma_dist(p1 / 2.0, 2.0);
        case Family::kGamma:
            return gamma_dist(p1, p2);
        case Family::kBetaL:
        case Family::kBetaR: {
            double a = gamma_dist(p1, 1.0);
            double b = gamma_dist(p2, 1.0);
            return a / (a + b);
        }
        case Family::kInverseGaussian:
            return inverse_gaussian(p1, p2);
    }
    throw std::invalid_argument("unknown distribution family");
}

double Generator::next() {
    for (;;) {
        double v = draw();
        if (v > 0.0 && std::isfinite(v)) return v;
        ++rejections_;
    }
}

std::vector<double> Generator::generate() {
    std::vector<double> values;
    values.reserve(spec_.n);
    for (std::uint64_t i = 0; i < spec_.n; ++i) {
        values.push_back(next());
    }
    return values;
}

void write_text_dataset(const std::string& path, const DatasetSpec& spec,
                        const std::vector<double>& values) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << "# " << spec.name << "," << family_name(spec.family) << ","
        << family_params(spec.family) << "," << spec.n << "," << spec.seed << "\n";
    out.precision(std::numeric_limits<double>::max_digits10);
    for (double v : values) {
        out << v << "\n";
    }
    if (!out) throw std::runtime_error("short write to " + path);
}

void write_binary_dataset(const std::string& path, const DatasetSpec& spec,
                          const std::vector<double>& values) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    char header[32] = {};
    std::memcpy(header, "UDDSDATA", 8);
    std::uint64_t n = values.size();
    std::memcpy(header + 8, &n, 8);
    std::memcpy(header + 16, &spec.seed, 8);
    out.write(header, sizeof(header));
    out.write(reinterpret_cast<const char*>(values.data()),
              static_cast<std::streamsize>(values.size() * sizeof(double)));
    if (!out) throw std::runtime_error("short write to " + path);
}

std::vector<double> read_dataset(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    char magic[8] = {};
    in.read(magic, 8);
    if (in.gcount() == 8 && std::memcmp(magic, "UDDSDATA", 8) == 0) {
        char rest[24];
        in.read(rest, 24);
        if (in.gcount() != 24) throw std::runtime_error("truncated binary dataset " + path);
        std::uint64_t n;
        std::memcpy(&n, rest, 8);
        std::vector<double> values(n);
        in.read(reinterpret_cast<char*>(values.data()),
                static_cast<std::streamsize>(n * sizeof(double)));
        if (static_cast<std::uint64_t>(in.gcount()) != n * sizeof(double)) {
            throw std::runtime_error("truncated binary dataset " + path);
        }
        return values;
    }
    // Text format.
    in.clear();
    in.seekg(0);
    std::vector<double> values;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        values.push_back(std::stod(line));
    }
    return values;
}

}  // namespace udds
