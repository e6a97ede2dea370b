// Command-line front end: instance generation, experiment execution,
// comparison reports and objective-space scatter plots.
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nemo/config.hpp"
#include "nemo/experiment.hpp"
#include "nemo/io.hpp"
#include "nemo/plot.hpp"

namespace fs = std::filesystem;

namespace {

int cmd_gen_instance(const std::string& family, std::size_t n, std::size_t k, bool has_k,
                     std::size_t m, std::uint64_t seed, std::string out_path) {
    if (family == "kp" && has_k)
        throw std::invalid_argument("--k only applies to --family nk");
    if (family == "nk" && !has_k) throw std::invalid_argument("--family nk requires --k");

    nemo::RandomSource rng(seed);
    const nemo::Problem problem = family == "kp"
                                      ? nemo::Problem(nemo::knapsack_generate(n, m, rng))
                                      : nemo::Problem(nemo::nk_generate(n, k, m, rng));
    if (out_path.empty()) {
        std::ostringstream name;
        name << family << "_n" << n;
        if (family == "nk") name << "_k" << k;
        name << "_m" << m << "_s" << seed << ".txt";
        out_path = name.str();
    }
    std::ostringstream body;
    problem.save(body);
    std::ofstream out(out_path, std::ios::binary);
    out << body.str();
    if (!out) throw std::runtime_error("cannot write " + out_path);
    std::cout << out_path << " " << nemo::hex64(nemo::fnv1a64(body.str())) << "\n";
    return 0;
}

int cmd_run(const std::string& config_path, const std::string& preset, bool has_seed,
            std::uint64_t seed, const std::string& out_dir, std::size_t workers) {
    if (!config_path.empty() && !preset.empty())
        throw std::invalid_argument("use either --config or --preset, not both");
    nemo::ExperimentConfig config;
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw std::runtime_error("cannot open config: " + config_path);
        config = nemo::parse_config(in);
    } else if (preset == "paper") {
        config = nemo::paper_preset();
    } else {
        config = nemo::desk_preset();
    }
    if (has_seed) config.master_seed = seed;
    if (!out_dir.empty()) config.out_dir = out_dir;

    const std::vector<nemo::RunRecord> records = nemo::execute(config, workers, &std::cerr);
    std::cout << (fs::path(config.out_dir) / "results.csv").string() << " (" << records.size()
              << " rows)\n";
    return 0;
}

int cmd_report(const std::string& csv_path) {
    std::ifstream in(csv_path);
    if (!in) throw std::runtime_error("cannot open results file: " + csv_path);
    const std::vector<nemo::RunRecord> records = nemo::read_csv(in);
    const std::vector<nemo::SummaryCell> cells = nemo::summarize_records(records);
    const std::string text = nemo::render_report_text(cells);
    std::cout << text;

    const fs::path dir = fs::path(csv_path).parent_path();
    const fs::path text_path = dir / "report.txt";
    const fs::path csv_out_path = dir / "report.csv";
    std::ofstream text_out(text_path, std::ios::binary);
    text_out << text;
    std::ofstream csv_out(csv_out_path, std::ios::binary);
    nemo::write_report_csv(csv_out, cells);
    if (!text_out || !csv_out) throw std::runtime_error("cannot write report files");
    std::cout << "wrote " << text_path.string() << " and " << csv_out_path.string() << "\n";
    return 0;
}

int cmd_plot(const std::vector<std::string>& dumps, const std::vector<std::string>& labels,
             const std::string& out_path) {
    if (!labels.empty() && labels.size() != dumps.size())
        throw std::invalid_argument("--label count must match the number of dump files");
    std::vector<nemo::PlotSeries> series;
    for (std::size_t i = 0; i < dumps.size(); ++i) {
        std::ifstream in(dumps[i]);
        if (!in) throw std::runtime_error("cannot open dump: " + dumps[i]);
        nemo::PointSet set = nemo::read_points(in);
        const std::string label =
            labels.empty() ? fs::path(dumps[i]).stem().string() : labels[i];
        if (set.points.empty()) std::cerr << "warning: empty series '" << label << "'\n";
        series.push_back(nemo::PlotSeries{label, std::move(set.points)});
    }
    const std::string svg = nemo::render_scatter_svg(series);
    std::ofstream out(out_path, std::ios::binary);
    out << svg;
    if (!out) throw std::runtime_error("cannot write " + out_path);
    std::cout << out_path << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"non-elitist vs elitist multi-objective evolutionary benchmark harness"};
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("gen-instance", "generate a problem instance file");
    std::string family;
    std::size_t n = 0, k = 0, m = 2;
    std::uint64_t inst_seed = 1;
    std::string gen_out;
    gen->add_option("--family", family, "problem family")
        ->required()
        ->check(CLI::IsMember({"kp", "nk"}));
    gen->add_option("--n", n, "genome length (items or bits)")->required();
    gen->add_option("--k", k, "epistatic neighbours per bit (nk only)");
    gen->add_option("--m", m, "number of objectives")->capture_default_str();
    gen->add_option("--seed", inst_seed, "instance seed")->capture_default_str();
    gen->add_option("--out", gen_out, "output file (default: derived name)");

    auto* runc = app.add_subcommand("run", "execute an experiment; writes CSV and dumps");
    std::string config_path, preset;
    std::uint64_t master_seed = 0;
    std::string run_out;
    std::size_t workers = 1;
    runc->add_option("--config", config_path, "experiment configuration file");
    runc->add_option("--preset", preset, "built-in configuration (default: desk)")
        ->check(CLI::IsMember({"desk", "paper"}));
    runc->add_option("--seed", master_seed, "master seed override");
    runc->add_option("--out", run_out, "output directory override");
    runc->add_option("--workers", workers, "concurrent runs")->capture_default_str();

    auto* rep = app.add_subcommand("report", "comparison table from a results CSV");
    std::string csv_path;
    rep->add_option("csv", csv_path, "results.csv produced by run")->required();

    auto* plot = app.add_subcommand("plot", "scatter plot of objective-space dumps");
    std::vector<std::string> dumps, labels;
    std::string plot_out = "plot.svg";
    plot->add_option("dumps", dumps, "dump files (1 to 4 series)")->required()->expected(1, 4);
    plot->add_option("--label", labels, "legend label per dump (repeatable)");
    plot->add_option("--out", plot_out, "output SVG file")->capture_default_str();

    CLI11_PARSE(app, argc, argv);
    try {
        if (gen->parsed())
            return cmd_gen_instance(family, n, k, gen->count("--k") > 0, m, inst_seed, gen_out);
        if (runc->parsed())
            return cmd_run(config_path, preset, runc->count("--seed") > 0, master_seed, run_out,
                           workers);
        if (rep->parsed()) return cmd_report(csv_path);
        if (plot->parsed()) return cmd_plot(dumps, labels, plot_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
