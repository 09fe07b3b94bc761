#ifndef UDDS_DATAGEN_HPP
#define UDDS_DATAGEN_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace udds {

enum class Family {
    kBetaL,            // Beta(5, 1.5)
    kBetaR,            // Beta(1.5, 5)
    kChiSquare,        // chi^2(5)
    kExponential,      // rate 0.5
    kExtremeValue,     // Gumbel(20, 2)
    kGamma,            // shape 2, scale 4
    kGumbel,           // Gumbel(100, 4)
    kHalfNormal,       // sigma 0.5
    kInverseGaussian,  // mu 10, lambda 5
    kLaplace,          // mu 200, b 10
    kLogistic,         // mu 200, s 10
    kLognormal,        // mu 1, sigma 1.5 of the underlying normal
    kNormal,           // mu 50, sigma 2
    kPareto,           // scale 2, shape 0.5
    kUniform,          // (0, 2.5e4)
};

struct DatasetSpec {
    std::string name;
    Family family;
    double p1;
    double p2;  // unused for single-parameter families
    std::uint64_t n;
    std::uint64_t seed;
};

// The 15 benchmark datasets with their canonical parameters.
std::vector<DatasetSpec> standard_datasets(std::uint64_t n, std::uint64_t seed);

// Lookup by name ("betaL", "chisquare", ...). Throws std::invalid_argument
// with the list of valid names on a miss.
DatasetSpec dataset_by_name(const std::string& name, std::uint64_t n, std::uint64_t seed);

std::string family_name(Family f);
std::string family_params(Family f);

// Deterministic sampler: identical (spec, seed) always yields the identical
// sequence on the same build. Draws that come out <= 0 are rejected and
// resampled so every emitted value is strictly positive.
class Generator {
public:
    explicit Generator(const DatasetSpec& spec);

    double next();
    std::vector<double> generate();

    std::uint64_t rejections() const { return rejections_; }

private:
    double draw();
    double uniform01();  // open interval (0, 1)
    double normal(double mu, double sigma);
    double gamma_dist(double shape, double scale);
    double inverse_gaussian(double mu, double lambda);

    DatasetSpec spec_;
    std::mt19937_64 rng_;
    std::uint64_t rejections_ = 0;
};

// Dataset files. Text: one header line then one value per line. Binary:
// 32-byte header (magic "UDDSDATA", n, seed) followed by raw little-endian
// doubles.
void write_text_dataset(const std::string& path, const DatasetSpec& spec,
                        const std::vector<double>& values);
void write_binary_dataset(const std::string& path, const DatasetSpec& spec,
                          const std::vector<double>& values);
std::vector<double> read_dataset(const std::string& path);

}  // namespace udds

#endif
