#include "udds/eval.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "udds/ddsketch.hpp"
#include "udds/uddsketch.hpp"

namespace udds {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct CellResult {
    std::vector<ErrorRow> rows;
    ThroughputRow throughput;
    std::string failure;  // non-empty when the cell errored out
};

struct Cell {
    std::size_t dataset_idx;
    Algorithm algorithm;
    double alpha;
    std::size_t m;
};

struct PreparedDataset {
    DatasetSpec spec;
    std::vector<double> values;
    std::vector<double> exact;  // aligned with grid.q_grid
};

CellResult run_cell(const ExperimentGrid& grid, const PreparedDataset& ds, const Cell& cell) {
    CellResult result;
    result.throughput = {ds.spec.name, algorithm_name(cell.algorithm), cell.alpha,
                         cell.m,       ds.spec.n,                      0.0};
    try {
        // One sketch per cell; the insert pass is what gets timed.
        UddSketch udd(UddSketch::alpha0_for(cell.alpha, grid.collapse_allowance), cell.m);
        DdSketch dd_l(cell.alpha, cell.m, CollapseStrategy::kLowest);
        DdSketch dd_h(cell.alpha, cell.m, CollapseStrategy::kHighest);
        DualDdSketch dd_d(cell.alpha, cell.m);

        auto start = std::chrono::steady_clock::now();
        switch (cell.algorithm) {
            case Algorithm::kUddSketch:
                for (double v : ds.values) udd.insert(v);
                break;
            case Algorithm::kDdSketchL:
                for (double v : ds.values) dd_l.insert(v);
                break;
            case Algorithm::kDdSketchH:
                for (double v : ds.values) dd_h.insert(v);
                break;
            case Algorithm::kDdSketchD:
                for (double v : ds.values) dd_d.insert(v);
                break;
        }
        auto elapsed = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - start)
                           .count();
        result.throughput.updates_per_ms =
            elapsed > 0.0 ? static_cast<double>(ds.spec.n) / elapsed
                          : std::numeric_limits<double>::infinity();

        for (std::size_t qi = 0; qi < grid.q_grid.size(); ++qi) {
            double q = grid.q_grid[qi];
            ErrorRow row;
            row.dataset = ds.spec.name;
            row.algorithm = algorithm_name(cell.algorithm);
            row.alpha = cell.alpha;
            row.m = cell.m;
            row.q = q;
            row.exact = ds.exact[qi];
            switch (cell.algorithm) {
                case Algorithm::kUddSketch: {
                    QuantileEstimate e = udd.quantile(q);
                    row.estimate = e.value;
                    row.final_alpha = e.guaranteed_alpha;
                    row.collapses = udd.collapses();
                    row.buckets_used = udd.bucket_count();
                    break;
                }
                case Algorithm::kDdSketchL:
                case Algorithm::kDdSketchH: {
                    const DdSketch& s = cell.algorithm == Algorithm::kDdSketchL ? dd_l : dd_h;
                    DdQuantileEstimate e = s.quantile(q);
                    row.estimate = e.value;
                    row.final_alpha = e.guaranteed_alpha;
                    row.collapses = s.collapse_count();
                    row.buckets_used = s.bucket_count();
                    row.from_collapsed_bucket = e.from_collapsed_bucket;
                    break;
                }
                case Algorithm::kDdSketchD: {
                    DdQuantileEstimate e = dd_d.quantile(q);
                    row.estimate = e.value;
                    row.final_alpha = e.guaranteed_alpha;
                    row.collapses = dd_d.collapse_count();
                    row.buckets_used = dd_d.bucket_count();
                    row.from_collapsed_bucket = e.from_collapsed_bucket;
                    break;
                }
            }
            if (row.exact > 0.0) {
                row.relative_error = std::abs(row.estimate - row.exact) / row.exact;
            } else {
                row.relative_error = std::numeric_limits<double>::quiet_NaN();
                row.valid = false;
            }
            result.rows.push_back(std::move(row));
        }
    } catch (const std::exception& e) {
        std::ostringstream msg;
        msg << ds.spec.name << "/" << algorithm_name(cell.algorithm) << "/alpha=" << cell.alpha
            << "/m=" << cell.m << ": " << e.what();
        result.failure = msg.str();
    }
    return result;
}

}  // namespace

std::string algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::kUddSketch: return "uddsketch";
        case Algorithm::kDdSketchL: return "ddsketch-l";
        case Algorithm::kDdSketchH: return "ddsketch-h";
        case Algorithm::kDdSketchD: return "ddsketch-d";
    }
    throw std::invalid_argument("unknown algorithm");
}

Algorithm algorithm_by_name(const std::string& name) {
    if (name == "uddsketch") return Algorithm::kUddSketch;
    if (name == "ddsketch-l") return Algorithm::kDdSketchL;
    if (name == "ddsketch-h") return Algorithm::kDdSketchH;
    if (name == "ddsketch-d") return Algorithm::kDdSketchD;
    throw std::invalid_argument(
        "unknown algorithm '" + name +
        "'; valid: uddsketch, ddsketch-l, ddsketch-h, ddsketch-d");
}

ExperimentGrid ExperimentGrid::defaults(std::uint64_t n, std::uint64_t seed) {
    ExperimentGrid grid;
    grid.alphas = {1e-5, 1e-4, 1e-3, 1e-2, 1e-1};
    grid.budgets = {128, 256, 512, 1024, 2048};
    for (int i = 0; i <= 10; ++i) grid.q_grid.push_back(i / 10.0);
    grid.algorithms = {Algorithm::kUddSketch, Algorithm::kDdSketchL, Algorithm::kDdSketchH,
                       Algorithm::kDdSketchD};
    grid.datasets = standard_datasets(n, seed);
    return grid;
}

std::vector<double> exact_quantiles(std::span<const double> data,
                                    std::span<const double> q_grid) {
    if (data.empty()) {
        throw std::invalid_argument("exact_quantiles: empty input");
    }
    std::vector<double> sorted(data.begin(), data.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> out;
    out.reserve(q_grid.size());
    double n = static_cast<double>(sorted.size());
    for (double q : q_grid) {
        if (!(q >= 0.0 && q <= 1.0)) {
            throw std::invalid_argument("q must be in [0, 1]");
        }
        auto rank = static_cast<std::size_t>(std::floor(1.0 + q * (n - 1.0)));
        out.push_back(sorted[rank - 1]);
    }
    return out;
}

EvalReport run_experiment(const ExperimentGrid& grid) {
    std::vector<PreparedDataset> prepared;
    prepared.reserve(grid.datasets.size());
    for (const auto& spec : grid.datasets) {
        Generator gen(spec);
        PreparedDataset ds{spec, gen.generate(), {}};
        ds.exact = exact_quantiles(ds.values, grid.q_grid);
        prepared.push_back(std::move(ds));
    }

    std::vector<Cell> cells;
    for (std::size_t di = 0; di < prepared.size(); ++di) {
        for (Algorithm alg : grid.algorithms) {
            for (double alpha : grid.alphas) {
                for (std::size_t m : grid.budgets) {
                    cells.push_back({di, alg, alpha, m});
                }
            }
        }
    }

    std::vector<CellResult> results(cells.size());
    unsigned jobs = std::max(1u, grid.jobs);
    if (jobs == 1) {
        for (std::size_t ci = 0; ci < cells.size(); ++ci) {
            results[ci] = run_cell(grid, prepared[cells[ci].dataset_idx], cells[ci]);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> workers;
        for (unsigned w = 0; w < jobs; ++w) {
            workers.emplace_back([&] {
                for (;;) {
                    std::size_t ci = next.fetch_add(1);
                    if (ci >= cells.size()) break;
                    results[ci] = run_cell(grid, prepared[cells[ci].dataset_idx], cells[ci]);
                }
            });
        }
        for (auto& t : workers) t.join();
    }

    EvalReport report;
    for (auto& r : results) {
        if (!r.failure.empty()) {
            report.failed_cells.push_back(std::move(r.failure));
            continue;
        }
        report.throughput.push_back(std::move(r.throughput));
        for (auto& row : r.rows) report.rows.push_back(std::move(row));
    }
    return report;
}

std::vector<std::string> EvalReport::accuracy_violations() const {
    std::vector<std::string> out;
    for (const auto& row : rows) {
        if (row.algorithm != "uddsketch" || !row.valid) continue;
        if (row.relative_error > row.final_alpha * (1.0 + 1e-9)) {
            std::ostringstream msg;
            msg << row.dataset << "/alpha=" << row.alpha << "/m=" << row.m << "/q=" << row.q
                << ": relative error " << row.relative_error << " > final alpha "
                << row.final_alpha;
            out.push_back(msg.str());
        }
    }
    return out;
}

namespace {

const char* kErrorHeader =
    "dataset,algorithm,alpha,m,q,estimate,exact,relative_error,final_alpha,collapses,"
    "buckets_used\n";

void write_error_row(std::ofstream& out, const ErrorRow& row) {
    out << row.dataset << "," << row.algorithm << "," << fmt(row.alpha) << "," << row.m << ","
        << fmt(row.q) << "," << fmt(row.estimate) << "," << fmt(row.exact) << ","
        << fmt(row.relative_error) << "," << fmt(row.final_alpha) << "," << row.collapses << ","
        << row.buckets_used << "\n";
}

}  // namespace

void emit_report(const EvalReport& report, const std::string& out_dir) {
    namespace fs = std::filesystem;
    if (report.rows.empty()) {
        throw std::invalid_argument("emit_report: empty report");
    }
    fs::create_directories(out_dir);

    std::ofstream errors(fs::path(out_dir) / "errors.csv", std::ios::trunc);
    if (!errors) throw std::runtime_error("cannot write errors.csv");
    errors << kErrorHeader;
    for (const auto& row : report.rows) write_error_row(errors, row);

    std::ofstream tput(fs::path(out_dir) / "throughput.csv", std::ios::trunc);
    if (!tput) throw std::runtime_error("cannot write throughput.csv");
    tput << "dataset,algorithm,alpha,m,items,updates_per_ms\n";
    for (const auto& row : report.throughput) {
        tput << row.dataset << "," << row.algorithm << "," << fmt(row.alpha) << "," << row.m
             << "," << row.items << "," << fmt(row.updates_per_ms) << "\n";
    }

    // Per-cell files: <dataset>/<algorithm>/alpha<a>_m<m>.csv
    std::string current_key;
    std::ofstream cell_out;
    for (const auto& row : report.rows) {
        std::ostringstream key;
        key << row.dataset << "/" << row.algorithm << "/alpha" << fmt(row.alpha) << "_m" << row.m
            << ".csv";
        if (key.str() != current_key) {
            current_key = key.str();
            fs::path p = fs::path(out_dir) / row.dataset / row.algorithm;
            fs::create_directories(p);
            cell_out.close();
            cell_out.open(fs::path(out_dir) / current_key, std::ios::trunc);
            if (!cell_out) throw std::runtime_error("cannot write " + current_key);
            cell_out << kErrorHeader;
        }
        write_error_row(cell_out, row);
    }
}

}  // namespace udds
