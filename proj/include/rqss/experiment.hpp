#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rqss/gqsa.hpp"
#include "rqss/recursive_engine.hpp"

namespace rqss {

struct SweepAxis {
    std::string param; ///< one of epsilon, delta, nu, seed, n, j
    std::vector<double> values;
};

/// Single JSON document describing a run. Unknown fields are rejected so a
/// typo in a sweep name cannot silently fall back to defaults.
struct ExperimentConfig {
    enum class Mode { recursive, gqsa, verify };
    Mode mode = Mode::recursive;

    // recursive
    int n = 2;
    std::optional<Vertex> target;
    ErrorConfig errors;
    AmpPolicy policy = AmpPolicy::automatic;
    int fixed_j = 0;
    int scan_max_j = 32;
    bool fastpath = true;
    std::vector<SweepAxis> sweep; ///< at most two axes
    int max_depth = kDefaultMaxDepth;

    // gqsa
    std::string spectrum = "grover"; ///< "grover", "synthetic-log", or a CSV path
    std::int64_t n_items = 16;
    std::vector<double> epsilon_grid{0.0};

    // verify
    bool full = false;

    std::string output = "results.csv";

    static ExperimentConfig from_json_text(const std::string& text);
    static ExperimentConfig from_json_file(const std::string& path);

private:
    static ExperimentConfig from_json_impl(const std::string& text);
};

/// One recursive-mode run. Column order of the result CSV.
struct ResultRecord {
    int n = 0;
    std::int64_t N = 0;
    double epsilon = 0.0;
    double delta = 0.0;
    double nu = 0.0;
    std::uint64_t seed = 0;
    double omega_n_sim = 0.0;
    double omega_n_model = 0.0;
    double alpha_n_real = 0.0;
    double alpha_n_imag = 0.0;
    int amp_iters = 0;
    double success_prob = 0.0;
    std::int64_t total_steps = 0;
    double max_orthogonality_residual = 0.0;
    std::int64_t wall_ms = 0;
};

struct ExperimentOutput {
    std::vector<ResultRecord> records; ///< recursive mode
    std::vector<SweepRow> gqsa_rows;   ///< gqsa mode
};

/// Runs the Cartesian product of the sweep axes (recursive mode) or the
/// sensitivity sweep (gqsa mode). Deterministic given the config. Sweep
/// points execute on a small worker pool; output order is config order.
ExperimentOutput run_experiment(const ExperimentConfig& cfg);

/// Shortest round-trip decimal representation.
std::string format_double(double v);

inline constexpr const char* kResultCsvHeader =
    "n,N,epsilon,delta,nu,seed,omega_n_sim,omega_n_model,alpha_n_real,alpha_n_imag,"
    "amp_iters,success_prob,total_steps,max_orthogonality_residual,wall_ms";

std::string records_to_csv(std::span<const ResultRecord> records);
std::string gqsa_rows_to_csv(std::span<const SweepRow> rows);
/// Drops the trailing wall-clock field of every line (determinism compares).
std::string strip_wall_ms(const std::string& csv);

/// Writes via a temp file and rename so readers never observe partial output.
void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

struct ChartSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

/// Fixed 800x600 line chart, linear axes, 5% range padding, no dependencies.
std::string render_svg_chart(const std::vector<ChartSeries>& series, const std::string& x_label,
                             const std::string& y_label);

/// success_prob against the first sweep axis, one polyline per value of the
/// second axis. Throws on empty input.
std::string records_to_svg(std::span<const ResultRecord> records,
                           const std::vector<SweepAxis>& sweep);

/// Same chart rebuilt from a result CSV; empty column names autodetect the
/// first (and second) varying parameter columns.
std::string csv_to_svg(const std::string& csv, const std::string& x_column = "",
                       const std::string& series_column = "",
                       const std::string& y_column = "success_prob");

} // namespace rqss
