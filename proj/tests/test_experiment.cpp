#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <string>

#include "rqss/experiment.hpp"

using namespace rqss;

namespace {

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

std::size_t count_lines(const std::string& text) {
    std::size_t n = 0;
    for (char c : text) n += c == '\n';
    return n;
}

std::size_t count_occurrences(const std::string& haystack, const std::string& needle) {
    std::size_t n = 0, pos = 0;
    while ((pos = haystack.find(needle, pos)) != std::string::npos) {
        ++n;
        pos += needle.size();
    }
    return n;
}

} // namespace

TEST_CASE("config parsing") {
    SUBCASE("minimal recursive config") {
        const ExperimentConfig cfg =
            ExperimentConfig::from_json_text(R"({"mode": "recursive", "n": 3})");
        CHECK(cfg.mode == ExperimentConfig::Mode::recursive);
        CHECK(cfg.n == 3);
        CHECK(cfg.sweep.empty());
        CHECK(cfg.output == "results.csv");
    }
    SUBCASE("full recursive config") {
        const ExperimentConfig cfg = ExperimentConfig::from_json_text(R"({
            "mode": "recursive", "n": 2, "target": [4, 4],
            "errors": {"epsilon": 0.1, "delta": -0.2, "nu": 0.01, "seed": 9, "straddle": true},
            "amplification": {"policy": "fixed", "j": 3},
            "fastpath": false,
            "sweep": [{"param": "epsilon", "values": [0, 0.1]}],
            "output": "out.csv"})");
        CHECK(cfg.target == Vertex{4, 4});
        CHECK(cfg.errors.delta == -0.2);
        CHECK(cfg.errors.straddle);
        CHECK(cfg.policy == AmpPolicy::fixed);
        CHECK(cfg.fixed_j == 3);
        CHECK_FALSE(cfg.fastpath);
        REQUIRE(cfg.sweep.size() == 1);
        CHECK(cfg.sweep[0].param == "epsilon");
    }
    SUBCASE("unknown fields are rejected with their path") {
        try {
            ExperimentConfig::from_json_text(
                R"({"mode": "recursive", "n": 2, "errors": {"sigma": 1}})");
            FAIL("expected a parse error");
        } catch (const std::invalid_argument& e) {
            CHECK(contains(e.what(), "errors.sigma"));
        }
        CHECK_THROWS_AS(
            ExperimentConfig::from_json_text(R"({"mode": "recursive", "n": 2, "typo": 1})"),
            std::invalid_argument);
    }
    SUBCASE("bad sweep parameters are rejected") {
        CHECK_THROWS_AS(ExperimentConfig::from_json_text(R"({"mode": "recursive", "n": 2,
            "sweep": [{"param": "epsilonn", "values": [0]}]})"),
                        std::invalid_argument);
        CHECK_THROWS_AS(ExperimentConfig::from_json_text(R"({"mode": "recursive", "n": 2,
            "sweep": [{"param": "epsilon", "values": []}]})"),
                        std::invalid_argument);
        CHECK_THROWS_AS(ExperimentConfig::from_json_text(R"({"mode": "recursive", "n": 2,
            "sweep": [{"param": "epsilon", "values": [0]}, {"param": "delta", "values": [0]},
                      {"param": "nu", "values": [0]}]})"),
                        std::invalid_argument);
    }
    SUBCASE("non-finite values are rejected") {
        CHECK_THROWS_AS(ExperimentConfig::from_json_text(
                            R"({"mode": "recursive", "n": 2, "errors": {"epsilon": 1e999}})"),
                        std::invalid_argument);
    }
    SUBCASE("gqsa and verify modes") {
        const ExperimentConfig g = ExperimentConfig::from_json_text(
            R"({"mode": "gqsa", "spectrum": "grover", "N": 16, "epsilon_grid": [0, 0.1]})");
        CHECK(g.mode == ExperimentConfig::Mode::gqsa);
        CHECK(g.n_items == 16);
        const ExperimentConfig v =
            ExperimentConfig::from_json_text(R"({"mode": "verify", "full": true})");
        CHECK(v.mode == ExperimentConfig::Mode::verify);
        CHECK(v.full);
        CHECK_THROWS_AS(ExperimentConfig::from_json_text(R"({"mode": "bogus"})"),
                        std::invalid_argument);
        CHECK_THROWS_AS(ExperimentConfig::from_json_text("not json"), std::invalid_argument);
    }
}

TEST_CASE("recursive experiment runs") {
    SUBCASE("single run at n = 3") {
        const ExperimentConfig cfg =
            ExperimentConfig::from_json_text(R"({"mode": "recursive", "n": 3})");
        const ExperimentOutput out = run_experiment(cfg);
        REQUIRE(out.records.size() == 1);
        const ResultRecord& r = out.records[0];
        CHECK(r.n == 3);
        CHECK(r.N == 729);
        CHECK(r.success_prob >= 0.9);
        CHECK(r.max_orthogonality_residual <= 1e-10);
        CHECK(std::abs(r.omega_n_sim - r.omega_n_model) <= 1e-9);
    }
    SUBCASE("epsilon sweep degrades gently") {
        const ExperimentConfig cfg = ExperimentConfig::from_json_text(R"({
            "mode": "recursive", "n": 4,
            "sweep": [{"param": "epsilon", "values": [0, 0.05, 0.1]}]})");
        const ExperimentOutput out = run_experiment(cfg);
        REQUIRE(out.records.size() == 3);
        double lo = 1.0, hi = 0.0;
        for (const ResultRecord& r : out.records) {
            lo = std::min(lo, r.success_prob);
            hi = std::max(hi, r.success_prob);
            CHECK(std::abs(r.omega_n_sim - r.omega_n_model) <= 1e-9);
        }
        CHECK(hi - lo <= 0.1);
        CHECK(out.records[0].epsilon == 0.0);
        CHECK(out.records[2].epsilon == 0.1);
    }
    SUBCASE("two-axis sweep is a Cartesian product in config order") {
        const ExperimentConfig cfg = ExperimentConfig::from_json_text(R"({
            "mode": "recursive", "n": 2,
            "sweep": [{"param": "epsilon", "values": [0, 0.1]},
                      {"param": "n", "values": [2, 3]}]})");
        const ExperimentOutput out = run_experiment(cfg);
        REQUIRE(out.records.size() == 4);
        CHECK(out.records[0].n == 2);
        CHECK(out.records[1].n == 3);
        CHECK(out.records[2].epsilon == 0.1);
    }
    SUBCASE("j sweep forces the fixed policy") {
        const ExperimentConfig cfg = ExperimentConfig::from_json_text(R"({
            "mode": "recursive", "n": 2,
            "sweep": [{"param": "j", "values": [0, 3]}]})");
        const ExperimentOutput out = run_experiment(cfg);
        REQUIRE(out.records.size() == 2);
        CHECK(out.records[0].amp_iters == 0);
        CHECK(out.records[1].amp_iters == 3);
        CHECK(out.records[1].total_steps == 188);
    }
}

TEST_CASE("gqsa experiment run") {
    const ExperimentConfig cfg = ExperimentConfig::from_json_text(
        R"({"mode": "gqsa", "spectrum": "grover", "N": 16, "epsilon_grid": [0]})");
    const ExperimentOutput out = run_experiment(cfg);
    REQUIRE(out.gqsa_rows.size() == 1);
    CHECK(out.gqsa_rows[0].q_m == doctest::Approx(M_PI).epsilon(1e-9));
    CHECK(out.gqsa_rows[0].P_m == doctest::Approx(1.0).epsilon(1e-12));
    const std::string csv = gqsa_rows_to_csv(out.gqsa_rows);
    CHECK(contains(csv, "epsilon,A,eta,P_m,q_m,T_AKR"));
    CHECK(count_lines(csv) == 2);
}

TEST_CASE("result csv") {
    const ExperimentConfig cfg = ExperimentConfig::from_json_text(R"({
        "mode": "recursive", "n": 2,
        "sweep": [{"param": "epsilon", "values": [0, 0.05, 0.1]}]})");
    const ExperimentOutput out = run_experiment(cfg);
    const std::string csv = records_to_csv(out.records);
    SUBCASE("header and line count") {
        CHECK(csv.rfind(std::string(kResultCsvHeader) + "\n", 0) == 0);
        CHECK(count_lines(csv) == 4);
    }
    SUBCASE("repeat runs are byte-identical modulo the wall clock") {
        const ExperimentOutput again = run_experiment(cfg);
        CHECK(strip_wall_ms(records_to_csv(again.records)) == strip_wall_ms(csv));
    }
    SUBCASE("shortest round-trip formatting") {
        CHECK(format_double(0.1) == "0.1");
        CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
        CHECK(format_double(-0.0) == "-0");
        const double v = 0.1 + 0.2;
        CHECK(std::stod(format_double(v)) == v);
    }
}

TEST_CASE("svg reports") {
    SUBCASE("single sweep axis gives one polyline with axis labels") {
        const ExperimentConfig cfg = ExperimentConfig::from_json_text(R"({
            "mode": "recursive", "n": 2,
            "sweep": [{"param": "epsilon", "values": [0, 0.05, 0.1]}]})");
        const ExperimentOutput out = run_experiment(cfg);
        const std::string svg = records_to_svg(out.records, cfg.sweep);
        CHECK(contains(svg, "viewBox=\"0 0 800 600\""));
        CHECK(count_occurrences(svg, "<polyline") == 1);
        CHECK(contains(svg, ">epsilon</text>"));
        CHECK(contains(svg, ">success_prob</text>"));
    }
    SUBCASE("two n values give two polylines with legend entries") {
        const ExperimentConfig cfg = ExperimentConfig::from_json_text(R"({
            "mode": "recursive", "n": 4,
            "sweep": [{"param": "epsilon", "values": [0, 0.05, 0.1]},
                      {"param": "n", "values": [4, 5]}]})");
        const ExperimentOutput out = run_experiment(cfg);
        const std::string svg = records_to_svg(out.records, cfg.sweep);
        CHECK(count_occurrences(svg, "<polyline") == 2);
        CHECK(contains(svg, ">n=4</text>"));
        CHECK(contains(svg, ">n=5</text>"));
    }
    SUBCASE("empty input is an error") {
        CHECK_THROWS_AS(records_to_svg({}, {}), std::invalid_argument);
        CHECK_THROWS_AS(render_svg_chart({}, "x", "y"), std::invalid_argument);
    }
    SUBCASE("csv round trip drives the plot command path") {
        const ExperimentConfig cfg = ExperimentConfig::from_json_text(R"({
            "mode": "recursive", "n": 2,
            "sweep": [{"param": "epsilon", "values": [0, 0.1]},
                      {"param": "n", "values": [2, 3]}]})");
        const ExperimentOutput out = run_experiment(cfg);
        const std::string svg = csv_to_svg(records_to_csv(out.records));
        CHECK(count_occurrences(svg, "<polyline") == 2);
        CHECK(contains(svg, ">n=2</text>"));
        CHECK(contains(svg, ">n=3</text>"));
        CHECK_THROWS_AS(csv_to_svg(records_to_csv(out.records), "bogus_column"),
                        std::invalid_argument);
    }
}

TEST_CASE("file round trip") {
    const std::string path = "test_experiment_roundtrip.tmp.csv";
    write_file(path, "a,b\n1,2\n");
    CHECK(read_file(path) == "a,b\n1,2\n");
    std::remove(path.c_str());
    CHECK_THROWS_AS(read_file("does_not_exist_anywhere.csv"), std::runtime_error);
}
