#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "rqss/experiment.hpp"
#include "rqss/verify.hpp"

namespace {

int env_max_depth() {
    const char* v = std::getenv("RQSS_MAX_N");
    if (!v) return rqss::kDefaultMaxDepth;
    try {
        const int d = std::stoi(v);
        if (d < 1) throw std::invalid_argument("RQSS_MAX_N must be >= 1");
        return d;
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("bad RQSS_MAX_N value '") + v + "'");
    }
}

rqss::ExperimentConfig load_config(const std::string& path) {
    rqss::ExperimentConfig cfg = rqss::ExperimentConfig::from_json_file(path);
    cfg.max_depth = env_max_depth();
    return cfg;
}

int run_recursive(const rqss::ExperimentConfig& cfg) {
    const rqss::ExperimentOutput out = rqss::run_experiment(cfg);
    rqss::write_file(cfg.output, rqss::records_to_csv(out.records));
    std::cout << out.records.size() << " run(s) -> " << cfg.output << "\n";
    for (const rqss::ResultRecord& r : out.records) {
        std::cout << "  n=" << r.n << " eps=" << r.epsilon << " delta=" << r.delta
                  << " nu=" << r.nu << " j=" << r.amp_iters
                  << " success=" << r.success_prob << " steps=" << r.total_steps << "\n";
    }
    return 0;
}

int run_gqsa(const rqss::ExperimentConfig& cfg) {
    const rqss::ExperimentOutput out = rqss::run_experiment(cfg);
    rqss::write_file(cfg.output, rqss::gqsa_rows_to_csv(out.gqsa_rows));
    std::cout << out.gqsa_rows.size() << " row(s) -> " << cfg.output << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"recursive quantum spatial search simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string spectrum_override;
    bool full = false;
    std::string csv_path, svg_path = "plot.svg";
    std::string x_col, series_col, y_col = "success_prob";

    CLI::App* simulate = app.add_subcommand("simulate", "run the configuration (single search)");
    simulate->add_option("config", config_path, "experiment config JSON")->required();

    CLI::App* sweep = app.add_subcommand("sweep", "run the configuration's parameter sweep");
    sweep->add_option("config", config_path, "experiment config JSON")->required();

    CLI::App* gqsa = app.add_subcommand("gqsa", "general-search sensitivity analysis");
    gqsa->add_option("config", config_path, "experiment config JSON")->required();
    gqsa->add_option("--spectrum", spectrum_override, "spectrum CSV path (overrides config)");

    CLI::App* verify = app.add_subcommand("verify", "run the invariant suites");
    verify->add_flag("--full", full, "include the slow grid checks");

    CLI::App* plot = app.add_subcommand("plot", "render a result CSV as an SVG chart");
    plot->add_option("results", csv_path, "result CSV")->required();
    plot->add_option("-o,--output", svg_path, "output SVG path");
    plot->add_option("--x", x_col, "x column (default: first varying parameter)");
    plot->add_option("--series", series_col, "series column (default: second varying parameter)");
    plot->add_option("--y", y_col, "y column");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) {
            const rqss::ExperimentConfig cfg = load_config(config_path);
            if (cfg.mode == rqss::ExperimentConfig::Mode::verify) {
                return rqss::run_verify(cfg.full, std::cout) == 0 ? 0 : 1;
            }
            if (cfg.mode == rqss::ExperimentConfig::Mode::gqsa) return run_gqsa(cfg);
            if (!cfg.sweep.empty()) {
                std::cerr << "config declares a sweep; use the sweep command\n";
                return 2;
            }
            return run_recursive(cfg);
        }
        if (sweep->parsed()) {
            rqss::ExperimentConfig cfg = load_config(config_path);
            if (cfg.mode != rqss::ExperimentConfig::Mode::recursive || cfg.sweep.empty()) {
                std::cerr << "sweep needs a recursive-mode config with sweep axes\n";
                return 2;
            }
            return run_recursive(cfg);
        }
        if (gqsa->parsed()) {
            rqss::ExperimentConfig cfg = load_config(config_path);
            if (cfg.mode != rqss::ExperimentConfig::Mode::gqsa) {
                std::cerr << "gqsa needs a gqsa-mode config\n";
                return 2;
            }
            if (!spectrum_override.empty()) cfg.spectrum = spectrum_override;
            return run_gqsa(cfg);
        }
        if (verify->parsed()) {
            return rqss::run_verify(full, std::cout) == 0 ? 0 : 1;
        }
        if (plot->parsed()) {
            const std::string csv = rqss::read_file(csv_path);
            rqss::write_file(svg_path, rqss::csv_to_svg(csv, x_col, series_col, y_col));
            std::cout << "chart -> " << svg_path << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
