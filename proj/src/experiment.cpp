#include "rqss/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace rqss {

using nlohmann::json;

namespace {

const std::set<std::string> kSweepableParams = {"epsilon", "delta", "nu", "seed", "n", "j"};

[[noreturn]] void config_error(const std::string& what) {
    throw std::invalid_argument("config: " + what);
}

void require_keys(const json& j, const std::string& path,
                  std::initializer_list<std::string_view> allowed) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) {
            config_error("unknown field " + (path.empty() ? it.key() : path + "." + it.key()));
        }
    }
}

double require_finite(double v, const std::string& path) {
    if (!std::isfinite(v)) config_error(path + " must be finite");
    return v;
}

void parse_errors(const json& j, ErrorConfig& e) {
    require_keys(j, "errors", {"epsilon", "delta", "nu", "seed", "straddle"});
    if (j.contains("epsilon")) e.epsilon = require_finite(j.at("epsilon").get<double>(), "errors.epsilon");
    if (j.contains("delta")) e.delta = require_finite(j.at("delta").get<double>(), "errors.delta");
    if (j.contains("nu")) e.nu = require_finite(j.at("nu").get<double>(), "errors.nu");
    if (j.contains("seed")) e.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("straddle")) e.straddle = j.at("straddle").get<bool>();
}

void parse_amplification(const json& j, ExperimentConfig& cfg) {
    require_keys(j, "amplification", {"policy", "j", "j_max"});
    if (j.contains("policy")) {
        const std::string p = j.at("policy").get<std::string>();
        if (p == "auto") cfg.policy = AmpPolicy::automatic;
        else if (p == "fixed") cfg.policy = AmpPolicy::fixed;
        else if (p == "scan") cfg.policy = AmpPolicy::scan;
        else config_error("amplification.policy must be auto, fixed or scan");
    }
    if (j.contains("j")) cfg.fixed_j = j.at("j").get<int>();
    if (j.contains("j_max")) cfg.scan_max_j = j.at("j_max").get<int>();
    if (cfg.fixed_j < 0 || cfg.scan_max_j < 0) config_error("amplification counts must be >= 0");
}

void parse_sweep(const json& j, ExperimentConfig& cfg) {
    if (!j.is_array()) config_error("sweep must be an array");
    if (j.size() > 2) config_error("sweep supports at most two axes");
    for (std::size_t i = 0; i < j.size(); ++i) {
        const json& axis = j[i];
        const std::string path = "sweep[" + std::to_string(i) + "]";
        require_keys(axis, path, {"param", "values"});
        SweepAxis a;
        a.param = axis.at("param").get<std::string>();
        if (!kSweepableParams.count(a.param)) {
            config_error(path + ".param '" + a.param + "' is not a sweepable parameter");
        }
        if (!axis.contains("values") || !axis.at("values").is_array() || axis.at("values").empty()) {
            config_error(path + ".values must be a nonempty array");
        }
        for (const json& v : axis.at("values")) {
            a.values.push_back(require_finite(v.get<double>(), path + ".values"));
        }
        cfg.sweep.push_back(std::move(a));
    }
}

} // namespace

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    try {
        return from_json_impl(text);
    } catch (const json::exception& e) {
        config_error(e.what());
    }
}

ExperimentConfig ExperimentConfig::from_json_impl(const std::string& text) {
    const json j = json::parse(text);
    if (!j.is_object()) config_error("root must be an object");
    if (!j.contains("mode")) config_error("missing field mode");

    ExperimentConfig cfg;
    const std::string mode = j.at("mode").get<std::string>();
    if (mode == "recursive") {
        cfg.mode = Mode::recursive;
        require_keys(j, "",
                     {"mode", "n", "target", "errors", "amplification", "fastpath", "sweep",
                      "output"});
        if (!j.contains("n")) config_error("missing field n");
        cfg.n = j.at("n").get<int>();
        if (cfg.n < 1) config_error("n must be >= 1");
        if (j.contains("target")) {
            const json& t = j.at("target");
            if (!t.is_array() || t.size() != 2) config_error("target must be [x, y]");
            cfg.target = Vertex{t[0].get<std::int64_t>(), t[1].get<std::int64_t>()};
        }
        if (j.contains("errors")) parse_errors(j.at("errors"), cfg.errors);
        if (j.contains("amplification")) parse_amplification(j.at("amplification"), cfg);
        if (j.contains("fastpath")) cfg.fastpath = j.at("fastpath").get<bool>();
        if (j.contains("sweep")) parse_sweep(j.at("sweep"), cfg);
        if (j.contains("output")) cfg.output = j.at("output").get<std::string>();
    } else if (mode == "gqsa") {
        cfg.mode = Mode::gqsa;
        require_keys(j, "", {"mode", "spectrum", "N", "epsilon_grid", "output"});
        if (j.contains("spectrum")) cfg.spectrum = j.at("spectrum").get<std::string>();
        if (j.contains("N")) cfg.n_items = j.at("N").get<std::int64_t>();
        if (cfg.n_items < 2) config_error("N must be >= 2");
        if (j.contains("epsilon_grid")) {
            cfg.epsilon_grid.clear();
            for (const json& v : j.at("epsilon_grid")) {
                cfg.epsilon_grid.push_back(require_finite(v.get<double>(), "epsilon_grid"));
            }
            if (cfg.epsilon_grid.empty()) config_error("epsilon_grid must be nonempty");
        }
        if (j.contains("output")) cfg.output = j.at("output").get<std::string>();
    } else if (mode == "verify") {
        cfg.mode = Mode::verify;
        require_keys(j, "", {"mode", "full"});
        if (j.contains("full")) cfg.full = j.at("full").get<bool>();
    } else {
        config_error("mode must be recursive, gqsa or verify");
    }
    return cfg;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
    return from_json_text(read_file(path));
}

namespace {

void apply_sweep_value(SearchParams& p, const std::string& param, double value) {
    if (param == "epsilon") p.errors.epsilon = value;
    else if (param == "delta") p.errors.delta = value;
    else if (param == "nu") p.errors.nu = value;
    else if (param == "seed") p.errors.seed = static_cast<std::uint64_t>(std::llround(value));
    else if (param == "n") p.n = static_cast<int>(std::llround(value));
    else if (param == "j") {
        p.policy = AmpPolicy::fixed;
        p.fixed_j = static_cast<int>(std::llround(value));
    }
}

SearchParams base_params(const ExperimentConfig& cfg) {
    SearchParams p;
    p.n = cfg.n;
    p.target = cfg.target;
    p.errors = cfg.errors;
    p.policy = cfg.policy;
    p.fixed_j = cfg.fixed_j;
    p.scan_max_j = cfg.scan_max_j;
    p.fastpath = cfg.fastpath;
    p.max_depth = cfg.max_depth;
    return p;
}

ResultRecord run_point(const SearchParams& params) {
    const auto start = std::chrono::steady_clock::now();
    SearchEngine engine(params);
    const SearchResult res = engine.run_search();
    const auto stop = std::chrono::steady_clock::now();

    ResultRecord r;
    r.n = params.n;
    r.N = engine.geometry().num_vertices;
    r.epsilon = params.errors.epsilon;
    r.delta = params.errors.delta;
    r.nu = params.errors.nu;
    r.seed = params.errors.seed;
    r.omega_n_sim = res.trace.omega_n();
    const AmplitudeTrace model = alpha_recursion(params.n, params.errors.effective_epsilon(),
                                                 params.errors.effective_delta());
    r.omega_n_model = model.omega.back();
    r.alpha_n_real = res.trace.alpha_n().real();
    r.alpha_n_imag = res.trace.alpha_n().imag();
    r.amp_iters = res.amplification_iterations;
    r.success_prob = res.success_probability;
    r.total_steps = res.total_steps;
    r.max_orthogonality_residual = res.trace.max_residual();
    r.wall_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count();
    return r;
}

GqsaSpectrum resolve_spectrum(const ExperimentConfig& cfg) {
    if (cfg.spectrum == "grover") return GqsaSpectrum::grover(cfg.n_items);
    if (cfg.spectrum == "synthetic-log") {
        return GqsaSpectrum::synthetic_pair(cfg.n_items,
                                            std::log(static_cast<double>(cfg.n_items)));
    }
    std::ifstream in(cfg.spectrum);
    if (!in) config_error("cannot open spectrum file " + cfg.spectrum);
    return GqsaSpectrum::from_csv(in);
}

} // namespace

ExperimentOutput run_experiment(const ExperimentConfig& cfg) {
    ExperimentOutput out;
    if (cfg.mode == ExperimentConfig::Mode::gqsa) {
        out.gqsa_rows = sensitivity_sweep(resolve_spectrum(cfg), cfg.epsilon_grid,
                                          static_cast<double>(cfg.n_items));
        return out;
    }
    if (cfg.mode == ExperimentConfig::Mode::verify) {
        config_error("verify mode is driven by the verify command, not run_experiment");
    }

    // Cartesian product, first axis outermost.
    std::vector<SearchParams> points;
    const SearchParams base = base_params(cfg);
    if (cfg.sweep.empty()) {
        points.push_back(base);
    } else if (cfg.sweep.size() == 1) {
        for (double v : cfg.sweep[0].values) {
            SearchParams p = base;
            apply_sweep_value(p, cfg.sweep[0].param, v);
            points.push_back(p);
        }
    } else {
        for (double v0 : cfg.sweep[0].values) {
            for (double v1 : cfg.sweep[1].values) {
                SearchParams p = base;
                apply_sweep_value(p, cfg.sweep[0].param, v0);
                apply_sweep_value(p, cfg.sweep[1].param, v1);
                points.push_back(p);
            }
        }
    }

    // Bounded worker pool; records land in config order regardless of timing.
    const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
    out.records.resize(points.size());
    std::size_t next = 0;
    while (next < points.size()) {
        const std::size_t batch = std::min(workers, points.size() - next);
        std::vector<std::future<ResultRecord>> futs;
        futs.reserve(batch);
        for (std::size_t i = 0; i < batch; ++i) {
            futs.push_back(std::async(std::launch::async, run_point, points[next + i]));
        }
        for (std::size_t i = 0; i < batch; ++i) out.records[next + i] = futs[i].get();
        next += batch;
    }
    return out;
}

std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string records_to_csv(std::span<const ResultRecord> records) {
    std::string out = kResultCsvHeader;
    out += '\n';
    for (const ResultRecord& r : records) {
        out += std::to_string(r.n);
        out += ',';
        out += std::to_string(r.N);
        out += ',';
        out += format_double(r.epsilon);
        out += ',';
        out += format_double(r.delta);
        out += ',';
        out += format_double(r.nu);
        out += ',';
        out += std::to_string(r.seed);
        out += ',';
        out += format_double(r.omega_n_sim);
        out += ',';
        out += format_double(r.omega_n_model);
        out += ',';
        out += format_double(r.alpha_n_real);
        out += ',';
        out += format_double(r.alpha_n_imag);
        out += ',';
        out += std::to_string(r.amp_iters);
        out += ',';
        out += format_double(r.success_prob);
        out += ',';
        out += std::to_string(r.total_steps);
        out += ',';
        out += format_double(r.max_orthogonality_residual);
        out += ',';
        out += std::to_string(r.wall_ms);
        out += '\n';
    }
    return out;
}

std::string gqsa_rows_to_csv(std::span<const SweepRow> rows) {
    std::string out = "epsilon,A,eta,P_m,q_m,T_AKR\n";
    for (const SweepRow& r : rows) {
        out += format_double(r.epsilon);
        out += ',';
        out += format_double(r.A);
        out += ',';
        out += format_double(r.eta);
        out += ',';
        out += format_double(r.P_m);
        out += ',';
        out += format_double(r.q_m);
        out += ',';
        out += format_double(r.T_akr);
        out += '\n';
    }
    return out;
}

std::string strip_wall_ms(const std::string& csv) {
    std::string out;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        const auto pos = line.rfind(',');
        out += pos == std::string::npos ? line : line.substr(0, pos);
        out += '\n';
    }
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace {

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

} // namespace

std::string render_svg_chart(const std::vector<ChartSeries>& series, const std::string& x_label,
                             const std::string& y_label) {
    bool any_point = false;
    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    for (const ChartSeries& s : series) {
        for (const auto& [x, y] : s.points) {
            if (!any_point) {
                xmin = xmax = x;
                ymin = ymax = y;
                any_point = true;
            } else {
                xmin = std::min(xmin, x);
                xmax = std::max(xmax, x);
                ymin = std::min(ymin, y);
                ymax = std::max(ymax, y);
            }
        }
    }
    if (!any_point) throw std::invalid_argument("empty report: nothing to plot");

    auto pad_range = [](double& lo, double& hi) {
        double pad = 0.05 * (hi - lo);
        if (pad == 0.0) pad = std::max(0.5, std::abs(hi) * 0.05);
        lo -= pad;
        hi += pad;
    };
    pad_range(xmin, xmax);
    pad_range(ymin, ymax);

    const double px0 = 70, px1 = 620, py0 = 550, py1 = 30; // plot rectangle
    auto sx = [&](double x) { return px0 + (x - xmin) / (xmax - xmin) * (px1 - px0); };
    auto sy = [&](double y) { return py0 + (y - ymin) / (ymax - ymin) * (py1 - py0); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 600\">\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
    svg << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"black\">\n";
    svg << "<line x1=\"" << px0 << "\" y1=\"" << py0 << "\" x2=\"" << px1 << "\" y2=\"" << py0
        << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << px0 << "\" y1=\"" << py0 << "\" x2=\"" << px0 << "\" y2=\"" << py1
        << "\" stroke=\"black\"/>\n";

    for (int i = 0; i <= 4; ++i) {
        const double xv = xmin + (xmax - xmin) * i / 4.0;
        const double yv = ymin + (ymax - ymin) * i / 4.0;
        svg << "<line x1=\"" << sx(xv) << "\" y1=\"" << py0 << "\" x2=\"" << sx(xv) << "\" y2=\""
            << py0 + 5 << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << sx(xv) << "\" y=\"" << py0 + 20 << "\" text-anchor=\"middle\">"
            << tick_label(xv) << "</text>\n";
        svg << "<line x1=\"" << px0 - 5 << "\" y1=\"" << sy(yv) << "\" x2=\"" << px0 << "\" y2=\""
            << sy(yv) << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << px0 - 8 << "\" y=\"" << sy(yv) + 4 << "\" text-anchor=\"end\">"
            << tick_label(yv) << "</text>\n";
    }
    svg << "<text x=\"" << (px0 + px1) / 2 << "\" y=\"585\" text-anchor=\"middle\">"
        << xml_escape(x_label) << "</text>\n";
    svg << "<text x=\"18\" y=\"" << (py0 + py1) / 2 << "\" text-anchor=\"middle\" "
        << "transform=\"rotate(-90 18 " << (py0 + py1) / 2 << ")\">" << xml_escape(y_label)
        << "</text>\n";

    for (std::size_t i = 0; i < series.size(); ++i) {
        const char* color = kPalette[i % (sizeof(kPalette) / sizeof(kPalette[0]))];
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [x, y] : series[i].points) svg << sx(x) << "," << sy(y) << " ";
        svg << "\"/>\n";
        const double ly = 40 + 20 * static_cast<double>(i);
        svg << "<line x1=\"640\" y1=\"" << ly << "\" x2=\"665\" y2=\"" << ly << "\" stroke=\""
            << color << "\" stroke-width=\"1.5\"/>\n";
        svg << "<text x=\"670\" y=\"" << ly + 4 << "\">" << xml_escape(series[i].label)
            << "</text>\n";
    }
    svg << "</g>\n</svg>\n";
    return svg.str();
}

namespace {

double record_param(const ResultRecord& r, const std::string& param) {
    if (param == "epsilon") return r.epsilon;
    if (param == "delta") return r.delta;
    if (param == "nu") return r.nu;
    if (param == "seed") return static_cast<double>(r.seed);
    if (param == "n") return r.n;
    if (param == "j") return r.amp_iters;
    throw std::invalid_argument("unknown chart parameter " + param);
}

} // namespace

std::string records_to_svg(std::span<const ResultRecord> records,
                           const std::vector<SweepAxis>& sweep) {
    if (records.empty()) throw std::invalid_argument("empty report: no records");
    std::vector<ChartSeries> series;
    const std::string x_param = sweep.empty() ? "run" : sweep[0].param;

    if (sweep.size() < 2) {
        ChartSeries s;
        s.label = "success_prob";
        for (std::size_t i = 0; i < records.size(); ++i) {
            const double x = sweep.empty() ? static_cast<double>(i)
                                           : record_param(records[i], x_param);
            s.points.emplace_back(x, records[i].success_prob);
        }
        series.push_back(std::move(s));
    } else {
        for (double v : sweep[1].values) {
            ChartSeries s;
            s.label = sweep[1].param + "=" + format_double(v);
            for (const ResultRecord& r : records) {
                if (record_param(r, sweep[1].param) == v) {
                    s.points.emplace_back(record_param(r, x_param), r.success_prob);
                }
            }
            series.push_back(std::move(s));
        }
    }
    return render_svg_chart(series, x_param, "success_prob");
}

std::string csv_to_svg(const std::string& csv, const std::string& x_column,
                       const std::string& series_column, const std::string& y_column) {
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty report: no CSV header");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    std::vector<std::string> header;
    std::stringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) header.push_back(cell);
    auto column_index = [&header](const std::string& name) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw std::invalid_argument("CSV has no column " + name);
        return static_cast<std::size_t>(it - header.begin());
    };

    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ls(line);
        while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
        if (row.size() != header.size()) throw std::invalid_argument("ragged CSV row");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::invalid_argument("empty report: no data rows");

    auto varies = [&rows](std::size_t col) {
        for (std::size_t i = 1; i < rows.size(); ++i) {
            if (rows[i][col] != rows[0][col]) return true;
        }
        return false;
    };

    std::string x_name = x_column;
    if (x_name.empty()) {
        for (const char* cand : {"epsilon", "delta", "nu", "seed", "n"}) {
            if (std::find(header.begin(), header.end(), cand) != header.end() &&
                varies(column_index(cand))) {
                x_name = cand;
                break;
            }
        }
        if (x_name.empty()) x_name = header[0].c_str();
    }
    std::string s_name = series_column;
    if (s_name.empty()) {
        for (const char* cand : {"n", "delta", "nu", "seed", "epsilon"}) {
            if (cand == x_name) continue;
            if (std::find(header.begin(), header.end(), cand) != header.end() &&
                varies(column_index(cand))) {
                s_name = cand;
                break;
            }
        }
    }

    const std::size_t xc = column_index(x_name);
    const std::size_t yc = column_index(y_column);
    std::vector<ChartSeries> series;
    if (s_name.empty()) {
        ChartSeries s;
        s.label = y_column;
        for (const auto& row : rows) s.points.emplace_back(row[xc], row[yc]);
        series.push_back(std::move(s));
    } else {
        const std::size_t sc = column_index(s_name);
        std::vector<double> seen;
        for (const auto& row : rows) {
            if (std::find(seen.begin(), seen.end(), row[sc]) == seen.end()) {
                seen.push_back(row[sc]);
            }
        }
        for (double v : seen) {
            ChartSeries s;
            s.label = s_name + "=" + format_double(v);
            for (const auto& row : rows) {
                if (row[sc] == v) s.points.emplace_back(row[xc], row[yc]);
            }
            series.push_back(std::move(s));
        }
    }
    return render_svg_chart(series, x_name, y_column);
}

} // namespace rqss
