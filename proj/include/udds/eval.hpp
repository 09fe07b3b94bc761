#ifndef UDDS_EVAL_HPP
#define UDDS_EVAL_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "udds/datagen.hpp"

namespace udds {

enum class Algorithm { kUddSketch, kDdSketchL, kDdSketchH, kDdSketchD };

std::string algorithm_name(Algorithm a);
Algorithm algorithm_by_name(const std::string& name);

struct ExperimentGrid {
    std::vector<double> alphas;
    std::vector<std::size_t> budgets;
    std::vector<double> q_grid;
    std::vector<Algorithm> algorithms;
    std::vector<DatasetSpec> datasets;
    std::uint32_t collapse_allowance = 10;  // k used to back-solve alpha0
    unsigned jobs = 1;

    static ExperimentGrid defaults(std::uint64_t n, std::uint64_t seed);
};

struct ErrorRow {
    std::string dataset;
    std::string algorithm;
    double alpha;
    std::size_t m;
    double q;
    double estimate;
    double exact;
    double relative_error;
    double final_alpha;
    std::uint64_t collapses;
    std::size_t buckets_used;
    bool from_collapsed_bucket = false;
    bool valid = true;
};

struct ThroughputRow {
    std::string dataset;
    std::string algorithm;
    double alpha;
    std::size_t m;
    std::uint64_t items;
    double updates_per_ms;
};

struct EvalReport {
    std::vector<ErrorRow> rows;
    std::vector<ThroughputRow> throughput;
    std::vector<std::string> failed_cells;  // "dataset/algorithm/alpha/m: reason"

    // UDDSketch rows violating relative_error <= final_alpha * (1 + 1e-9).
    std::vector<std::string> accuracy_violations() const;
};

// Lower q-quantiles (rank floor(1 + q(n-1))) of a full sorted copy.
std::vector<double> exact_quantiles(std::span<const double> data,
                                    std::span<const double> q_grid);

EvalReport run_experiment(const ExperimentGrid& grid);

// errors.csv + throughput.csv in out_dir, plus per-cell files under
// out_dir/<dataset>/<algorithm>/alpha<a>_m<m>.csv. Floats carry 17
// significant digits so a parse round-trips bit-exactly.
void emit_report(const EvalReport& report, const std::string& out_dir);

}  // namespace udds

#endif
