#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "udds/datagen.hpp"
#include "udds/eval.hpp"
#include "udds/serialize.hpp"
#include "udds/uddsketch.hpp"

namespace {

namespace fs = std::filesystem;

// Exit codes: 0 ok, 2 usage error, 3 data error, 4 accuracy assertion failed.
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitAccuracy = 4;

std::string default_results_dir() {
    const char* env = std::getenv("UDDS_RESULTS_DIR");
    return env ? env : "results";
}

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stod(tok));
    }
    return out;
}

std::vector<std::string> parse_string_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(tok);
    }
    return out;
}

// Flat key=value config mirroring the default grid parameters. '#' starts a
// comment line.
void apply_grid_config(const std::string& path, udds::ExperimentGrid& grid, std::uint64_t& n,
                       std::uint64_t& seed) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open grid config " + path);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("bad config line: " + line);
        }
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        if (key == "alphas") {
            grid.alphas = parse_double_list(value);
        } else if (key == "buckets") {
            grid.budgets.clear();
            for (double b : parse_double_list(value)) {
                grid.budgets.push_back(static_cast<std::size_t>(b));
            }
        } else if (key == "q_grid") {
            grid.q_grid = parse_double_list(value);
        } else if (key == "algorithms") {
            grid.algorithms.clear();
            for (const auto& name : parse_string_list(value)) {
                grid.algorithms.push_back(udds::algorithm_by_name(name));
            }
        } else if (key == "n") {
            n = std::stoull(value);
        } else if (key == "seed") {
            seed = std::stoull(value);
        } else if (key == "k") {
            grid.collapse_allowance = static_cast<std::uint32_t>(std::stoul(value));
        } else {
            throw std::runtime_error("unknown config key: " + key);
        }
    }
}

std::vector<double> read_values(const std::string& path) {
    if (path.empty() || path == "-") {
        std::vector<double> values;
        double v;
        while (std::cin >> v) values.push_back(v);
        return values;
    }
    return udds::read_dataset(path);
}

int cmd_generate(const std::string& dataset, std::uint64_t n, std::uint64_t seed,
                 const std::string& format, const std::string& out_dir, bool porcelain) {
    std::vector<udds::DatasetSpec> specs;
    if (dataset == "all") {
        specs = udds::standard_datasets(n, seed);
    } else {
        specs.push_back(udds::dataset_by_name(dataset, n, seed));
    }
    fs::create_directories(out_dir);
    for (const auto& spec : specs) {
        udds::Generator gen(spec);
        std::vector<double> values = gen.generate();
        std::string ext = format == "binary" ? ".bin" : ".txt";
        fs::path path = fs::path(out_dir) / (spec.name + ext);
        if (format == "binary") {
            udds::write_binary_dataset(path.string(), spec, values);
        } else {
            udds::write_text_dataset(path.string(), spec, values);
        }
        if (porcelain) {
            std::cout << "dataset\t" << spec.name << "\t" << path.string() << "\t" << values.size()
                      << "\t" << gen.rejections() << "\n";
        } else {
            std::cout << "wrote " << path.string() << " (" << values.size() << " values";
            if (gen.rejections() > 0) {
                std::cout << ", " << gen.rejections() << " nonpositive draws resampled";
            }
            std::cout << ")\n";
        }
    }
    return 0;
}

int cmd_eval(const std::string& grid_arg, const std::string& algorithms, std::uint64_t n,
             std::uint64_t seed, const std::string& out_dir, unsigned jobs, bool porcelain) {
    udds::ExperimentGrid grid = udds::ExperimentGrid::defaults(n, seed);
    if (!grid_arg.empty() && grid_arg != "default") {
        apply_grid_config(grid_arg, grid, n, seed);
        grid.datasets = udds::standard_datasets(n, seed);
    }
    if (!algorithms.empty()) {
        grid.algorithms.clear();
        for (const auto& name : parse_string_list(algorithms)) {
            grid.algorithms.push_back(udds::algorithm_by_name(name));
        }
    }
    grid.jobs = jobs;

    udds::EvalReport report = udds::run_experiment(grid);
    udds::emit_report(report, out_dir);

    if (porcelain) {
        for (const auto& t : report.throughput) {
            std::cout << "throughput\t" << t.dataset << "\t" << t.algorithm << "\t" << t.alpha
                      << "\t" << t.m << "\t" << t.updates_per_ms << "\n";
        }
    } else {
        std::cout << "evaluated " << report.throughput.size() << " cells, " << report.rows.size()
                  << " error rows -> " << out_dir << "\n";
    }
    for (const auto& f : report.failed_cells) {
        std::cerr << "failed cell: " << f << "\n";
    }
    std::vector<std::string> violations = report.accuracy_violations();
    for (const auto& v : violations) {
        std::cerr << "accuracy violation: " << v << "\n";
    }
    if (!violations.empty()) return kExitAccuracy;
    if (!report.failed_cells.empty()) return kExitData;
    return 0;
}

int cmd_sketch_insert(const std::string& in_path, const std::string& out_path,
                      const std::string& data_path, double alpha0, std::size_t m) {
    udds::UddSketch sketch =
        in_path.empty() ? udds::UddSketch(alpha0, m) : udds::deserialize_udd(udds::read_file(in_path));
    for (double v : read_values(data_path)) {
        sketch.insert(v);
    }
    udds::write_file(out_path, udds::serialize(sketch));
    std::cout << "sketch: " << sketch.total() << " items, " << sketch.bucket_count()
              << " buckets, alpha " << sketch.current_alpha() << " -> " << out_path << "\n";
    return 0;
}

int cmd_sketch_query(const std::string& sketch_path, const std::string& q_list, bool porcelain) {
    udds::UddSketch sketch = udds::deserialize_udd(udds::read_file(sketch_path));
    for (double q : parse_double_list(q_list)) {
        udds::QuantileEstimate e = sketch.quantile(q);
        if (porcelain) {
            std::printf("quantile\t%.17g\t%.17g\t%.17g\n", e.q, e.value, e.guaranteed_alpha);
        } else {
            std::printf("q=%g -> %.17g (guaranteed alpha %.6g)\n", e.q, e.value,
                        e.guaranteed_alpha);
        }
    }
    return 0;
}

int cmd_sketch_merge(const std::string& a_path, const std::string& b_path,
                     const std::string& out_path) {
    udds::UddSketch a = udds::deserialize_udd(udds::read_file(a_path));
    udds::UddSketch b = udds::deserialize_udd(udds::read_file(b_path));
    udds::UddSketch merged = udds::UddSketch::merge(a, b);
    udds::write_file(out_path, udds::serialize(merged));
    std::cout << "merged " << a.total() << " + " << b.total() << " items -> " << out_path << "\n";
    return 0;
}

int cmd_sketch_info(const std::string& sketch_path, bool porcelain) {
    udds::UddSketch sketch = udds::deserialize_udd(udds::read_file(sketch_path));
    if (porcelain) {
        std::printf("info\t%.17g\t%.17g\t%u\t%zu\t%zu\t%llu\n", sketch.alpha0(),
                    sketch.current_alpha(), sketch.collapses(), sketch.max_buckets(),
                    sketch.bucket_count(),
                    static_cast<unsigned long long>(sketch.total()));
    } else {
        std::printf("alpha0:        %.17g\n", sketch.alpha0());
        std::printf("current alpha: %.17g\n", sketch.current_alpha());
        std::printf("collapses:     %u\n", sketch.collapses());
        std::printf("max buckets:   %zu\n", sketch.max_buckets());
        std::printf("buckets used:  %zu\n", sketch.bucket_count());
        std::printf("total items:   %llu\n", static_cast<unsigned long long>(sketch.total()));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"UDDSketch streaming quantiles: dataset generation, evaluation, sketch tools"};
    app.require_subcommand(1);
    bool porcelain = false;
    app.add_flag("--porcelain", porcelain, "machine-parsable stdout");

    // generate
    auto* generate = app.add_subcommand("generate", "write synthetic datasets");
    std::string gen_dataset = "all";
    std::uint64_t gen_n = 100000;
    std::uint64_t gen_seed = 42;
    std::string gen_format = "text";
    std::string gen_out = "datasets";
    generate->add_option("--dataset", gen_dataset, "dataset name or 'all'");
    generate->add_option("--n", gen_n, "items per dataset");
    generate->add_option("--seed", gen_seed, "RNG seed");
    generate->add_option("--format", gen_format)->check(CLI::IsMember({"text", "binary"}));
    generate->add_option("--out", gen_out, "output directory");

    // eval
    auto* eval = app.add_subcommand("eval", "run the evaluation grid");
    std::string eval_grid = "default";
    std::string eval_algorithms;
    std::uint64_t eval_n = 100000;
    std::uint64_t eval_seed = 42;
    std::string eval_out = default_results_dir();
    unsigned eval_jobs = 1;
    eval->add_option("--grid", eval_grid, "'default' or a key=value config file");
    eval->add_option("--algorithms", eval_algorithms, "comma-separated subset");
    eval->add_option("--n", eval_n, "items per dataset");
    eval->add_option("--seed", eval_seed, "RNG seed");
    eval->add_option("--out", eval_out, "results directory");
    eval->add_option("--jobs", eval_jobs, "parallel cells");

    // sketch
    auto* sketch = app.add_subcommand("sketch", "operate on serialized sketch files");
    sketch->require_subcommand(1);

    auto* s_insert = sketch->add_subcommand("insert", "stream values into a sketch");
    std::string si_in, si_out = "sketch.udds", si_data;
    double si_alpha0 = 0.001;
    std::size_t si_m = 1024;
    s_insert->add_option("--in", si_in, "existing sketch to extend");
    s_insert->add_option("--out", si_out, "output sketch file");
    s_insert->add_option("--data", si_data, "values file ('-' or empty for stdin)");
    s_insert->add_option("--alpha0", si_alpha0, "initial accuracy for a new sketch");
    s_insert->add_option("--m", si_m, "bucket budget for a new sketch");

    auto* s_query = sketch->add_subcommand("query", "print quantile estimates");
    std::string sq_sketch, sq_q = "0.5";
    s_query->add_option("sketch", sq_sketch, "sketch file")->required();
    s_query->add_option("--q", sq_q, "comma-separated quantiles");

    auto* s_merge = sketch->add_subcommand("merge", "merge two sketches");
    std::string sm_a, sm_b, sm_out = "merged.udds";
    s_merge->add_option("a", sm_a)->required();
    s_merge->add_option("b", sm_b)->required();
    s_merge->add_option("-o,--out", sm_out);

    auto* s_info = sketch->add_subcommand("info", "print sketch parameters");
    std::string sf_sketch;
    s_info->add_option("sketch", sf_sketch, "sketch file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (generate->parsed()) {
            return cmd_generate(gen_dataset, gen_n, gen_seed, gen_format, gen_out, porcelain);
        }
        if (eval->parsed()) {
            return cmd_eval(eval_grid, eval_algorithms, eval_n, eval_seed, eval_out, eval_jobs,
                            porcelain);
        }
        if (s_insert->parsed()) {
            return cmd_sketch_insert(si_in, si_out, si_data, si_alpha0, si_m);
        }
        if (s_query->parsed()) {
            return cmd_sketch_query(sq_sketch, sq_q, porcelain);
        }
        if (s_merge->parsed()) {
            return cmd_sketch_merge(sm_a, sm_b, sm_out);
        }
        if (s_info->parsed()) {
            return cmd_sketch_info(sf_sketch, porcelain);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
