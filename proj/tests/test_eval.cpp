#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "udds/eval.hpp"

using namespace udds;

TEST_CASE("exact_quantiles rank arithmetic") {
    std::vector<double> three = {5, 1, 3};
    std::vector<double> qs = {0.5};
    CHECK(exact_quantiles(three, qs)[0] == 3.0);

    std::vector<double> one = {7.5};
    std::vector<double> all_q = {0.0, 0.3, 1.0};
    for (double v : exact_quantiles(one, all_q)) CHECK(v == 7.5);

    std::vector<double> hundred;
    for (int i = 1; i <= 100; ++i) hundred.push_back(i);
    std::vector<double> q25 = {0.25};
    CHECK(exact_quantiles(hundred, q25)[0] == 25.0);  // rank floor(1 + 24.75) = 25

    CHECK_THROWS_AS(exact_quantiles(std::vector<double>{}, qs), std::invalid_argument);
}

TEST_CASE("exact_quantiles agrees with selection by counting") {
    std::mt19937_64 rng(73);
    std::uniform_real_distribution<double> value(0.0, 100.0);
    std::vector<double> q_grid;
    for (int i = 0; i <= 10; ++i) q_grid.push_back(i / 10.0);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> data;
        std::size_t n = 1 + rng() % 50;
        for (std::size_t i = 0; i < n; ++i) data.push_back(value(rng));
        auto fast = exact_quantiles(data, q_grid);
        for (std::size_t qi = 0; qi < q_grid.size(); ++qi) {
            auto rank = static_cast<std::size_t>(
                std::floor(1.0 + q_grid[qi] * static_cast<double>(n - 1)));
            // naive oracle: the smallest element with at least `rank` values <= it
            double best = std::numeric_limits<double>::infinity();
            for (double candidate : data) {
                std::size_t count = 0;
                for (double v : data) {
                    if (v <= candidate) ++count;
                }
                if (count >= rank && candidate < best) best = candidate;
            }
            REQUIRE(fast[qi] == best);
        }
    }
}

TEST_CASE("report shape for a single cell") {
    ExperimentGrid grid;
    grid.alphas = {0.01};
    grid.budgets = {256};
    for (int i = 0; i <= 10; ++i) grid.q_grid.push_back(i / 10.0);
    grid.algorithms = {Algorithm::kUddSketch};
    grid.datasets = {dataset_by_name("exponential", 2000, 21)};
    EvalReport report = run_experiment(grid);
    CHECK(report.rows.size() == 11);
    CHECK(report.throughput.size() == 1);
    CHECK(report.throughput[0].updates_per_ms > 0.0);
    CHECK(report.failed_cells.empty());
    CHECK(report.accuracy_violations().empty());
}

TEST_CASE("estimates and exact quantiles are monotone in q") {
    ExperimentGrid grid;
    grid.alphas = {0.01};
    grid.budgets = {128};
    for (int i = 0; i <= 20; ++i) grid.q_grid.push_back(i / 20.0);
    grid.algorithms = {Algorithm::kUddSketch, Algorithm::kDdSketchL};
    grid.datasets = {dataset_by_name("lognormal", 5000, 22)};
    EvalReport report = run_experiment(grid);
    for (std::size_t i = 1; i < report.rows.size(); ++i) {
        const auto& prev = report.rows[i - 1];
        const auto& cur = report.rows[i];
        if (prev.algorithm == cur.algorithm && prev.q < cur.q) {
            CHECK(prev.exact <= cur.exact);
            CHECK(prev.estimate <= cur.estimate);
        }
    }
}

TEST_CASE("parallel run matches the serial row set") {
    ExperimentGrid grid;
    grid.alphas = {0.01, 0.1};
    grid.budgets = {64, 128};
    for (int i = 0; i <= 10; ++i) grid.q_grid.push_back(i / 10.0);
    grid.algorithms = {Algorithm::kUddSketch, Algorithm::kDdSketchD};
    grid.datasets = {dataset_by_name("gamma", 3000, 23)};
    EvalReport serial = run_experiment(grid);
    grid.jobs = 4;
    EvalReport parallel = run_experiment(grid);
    REQUIRE(serial.rows.size() == parallel.rows.size());
    for (std::size_t i = 0; i < serial.rows.size(); ++i) {
        CHECK(serial.rows[i].estimate == parallel.rows[i].estimate);
        CHECK(serial.rows[i].exact == parallel.rows[i].exact);
    }
}

TEST_CASE("emitted CSV parses back bit-exactly") {
    namespace fs = std::filesystem;
    ExperimentGrid grid;
    grid.alphas = {0.001};
    grid.budgets = {512};
    for (int i = 0; i <= 10; ++i) grid.q_grid.push_back(i / 10.0);
    grid.algorithms = {Algorithm::kUddSketch, Algorithm::kDdSketchH};
    grid.datasets = {dataset_by_name("chisquare", 2000, 24)};
    EvalReport report = run_experiment(grid);

    std::string dir = "test_eval_out";
    emit_report(report, dir);

    std::ifstream in(fs::path(dir) / "errors.csv");
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header ==
          "dataset,algorithm,alpha,m,q,estimate,exact,relative_error,final_alpha,collapses,"
          "buckets_used");
    std::size_t row_idx = 0;
    std::string line;
    while (std::getline(in, line)) {
        REQUIRE(row_idx < report.rows.size());
        std::stringstream ss(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        REQUIRE(fields.size() == 11);
        const ErrorRow& row = report.rows[row_idx];
        CHECK(fields[0] == row.dataset);
        CHECK(std::stod(fields[4]) == row.q);
        CHECK(std::stod(fields[5]) == row.estimate);
        CHECK(std::stod(fields[6]) == row.exact);
        CHECK(std::stod(fields[7]) == row.relative_error);
        ++row_idx;
    }
    CHECK(row_idx == report.rows.size());

    // per-cell layout
    CHECK(fs::exists(fs::path(dir) / "chisquare" / "uddsketch" / "alpha0.001_m512.csv"));
    CHECK(fs::exists(fs::path(dir) / "throughput.csv"));
    fs::remove_all(dir);
}

TEST_CASE("default grid mirrors the benchmark parameters") {
    ExperimentGrid grid = ExperimentGrid::defaults(1000, 1);
    CHECK(grid.alphas == std::vector<double>{1e-5, 1e-4, 1e-3, 1e-2, 1e-1});
    CHECK(grid.budgets == std::vector<std::size_t>{128, 256, 512, 1024, 2048});
    CHECK(grid.q_grid.size() == 11);
    CHECK(grid.algorithms.size() == 4);
    CHECK(grid.datasets.size() == 15);
}
