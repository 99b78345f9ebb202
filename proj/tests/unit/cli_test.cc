// Copyright 2026 The telefid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"

using namespace telefid;
using namespace telefid::cli;
using nlohmann::ordered_json;

namespace {

struct RunOutput {
    int code;
    std::string out;
    std::string err;
};

RunOutput run_cli(const std::vector<std::string> &args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

ordered_json run_json(const std::vector<std::string> &args) {
    const RunOutput r = run_cli(args);
    EXPECT_EQ(r.code, kSuccess) << r.err;
    return ordered_json::parse(r.out);
}

std::vector<std::vector<std::string>> parse_csv(const std::string &text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::string cell;
        bool quoted = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            const char c = line[i];
            if (quoted) {
                if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                    cell += '"';
                    ++i;
                } else if (c == '"') {
                    quoted = false;
                } else {
                    cell += c;
                }
            } else if (c == '"') {
                quoted = true;
            } else if (c == ',') {
                cells.push_back(cell);
                cell.clear();
            } else {
                cell += c;
            }
        }
        cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

std::size_t column(const std::vector<std::string> &header, const std::string &name) {
    for (std::size_t k = 0; k < header.size(); ++k) {
        if (header[k] == name) {
            return k;
        }
    }
    ADD_FAILURE() << "missing column " << name;
    return 0;
}

std::filesystem::path temp_path(const std::string &name) {
    return std::filesystem::path(::testing::TempDir()) / name;
}

const std::string kScenarioDir = TELEFID_SCENARIO_DIR;

}  // namespace

TEST(cli, analyze_optimal_perfect) {
    const ordered_json j = run_json({"analyze", "optimal", "1.0"});
    EXPECT_EQ(j["scenario"], "optimal");
    EXPECT_NEAR(j["analytic"]["F"].get<double>(), 1.0, tol::kExact);
    EXPECT_NEAR(j["analytic"]["D"].get<double>(), 0.0, tol::kExact);
    EXPECT_EQ(j["classification"], "CHSH_violating");
    EXPECT_FALSE(j.contains("monte_carlo"));
    EXPECT_TRUE(j.contains("region"));
    EXPECT_TRUE(j["bounds"].contains("half_circle"));
}

TEST(cli, analyze_worst_case_vertex) {
    const ordered_json j = run_json({"analyze", "--scenario", "permuted:1,0,3,2", "--p", "1.0"});
    EXPECT_NEAR(j["analytic"]["F"].get<double>(), 1.0 / 3.0, tol::kExact);
    EXPECT_NEAR(j["analytic"]["D"].get<double>(), 2.0 / (3.0 * std::sqrt(5.0)), tol::kExact);
    const ordered_json alias = run_json({"analyze", "permuted", "1.0"});
    EXPECT_EQ(alias["analytic"], j["analytic"]);
}

TEST(cli, analyze_noise_only) {
    const ordered_json j = run_json({"analyze", "optimal", "0.0"});
    EXPECT_NEAR(j["analytic"]["F"].get<double>(), 0.5, tol::kExact);
    EXPECT_NEAR(j["analytic"]["D"].get<double>(), 0.0, tol::kExact);
    EXPECT_EQ(j["classification"], "separable");
}

TEST(cli, analyze_csv) {
    const RunOutput r = run_cli({"analyze", "permuted", "1.0", "--format", "csv"});
    ASSERT_EQ(r.code, kSuccess) << r.err;
    const auto rows = parse_csv(r.out);
    ASSERT_EQ(rows.size(), 2u);
    ASSERT_EQ(rows[0].size(), rows[1].size());
    EXPECT_EQ(rows[1][column(rows[0], "scenario")], "permuted:1,0,3,2");
    EXPECT_NEAR(std::stod(rows[1][column(rows[0], "F")]), 1.0 / 3.0, tol::kExact);
    EXPECT_EQ(rows[1][column(rows[0], "classification")], "CHSH_violating");
    EXPECT_EQ(r.out.find("mc_"), std::string::npos);
}

TEST(cli, analyze_monte_carlo_fields_only_when_requested) {
    const ordered_json j = run_json({"analyze", "random:4", "0.7", "--mc", "20000", "--seed", "11"});
    ASSERT_TRUE(j.contains("monte_carlo"));
    const ordered_json &mc = j["monte_carlo"];
    EXPECT_EQ(mc["samples"], 20000);
    EXPECT_EQ(mc["seed"], 11);
    const double f = j["analytic"]["F"].get<double>();
    EXPECT_LE(std::abs(mc["F"]["mean"].get<double>() - f), 5.0 * mc["F"]["std_error"].get<double>());

    const RunOutput csv = run_cli({"analyze", "random:4", "0.7", "--mc", "20000", "--format", "csv"});
    ASSERT_EQ(csv.code, kSuccess);
    const auto rows = parse_csv(csv.out);
    EXPECT_NEAR(std::stod(rows[1][column(rows[0], "mc_F")]), f, 0.05);
}

TEST(cli, sample_counts_accept_scientific_notation) {
    const ordered_json j = run_json({"analyze", "optimal", "0.5", "--mc", "2e4"});
    EXPECT_EQ(j["monte_carlo"]["samples"], 20000);
    EXPECT_EQ(run_cli({"analyze", "optimal", "0.5", "--mc", "1.5e2"}).code, kSuccess);
    EXPECT_EQ(run_cli({"analyze", "optimal", "0.5", "--mc", "2.5"}).code, kUsageError);
    EXPECT_EQ(run_cli({"analyze", "optimal", "0.5", "--mc", "-1e4"}).code, kUsageError);
    EXPECT_EQ(run_cli({"analyze", "optimal", "0.5", "--mc", "lots"}).code, kUsageError);
    EXPECT_EQ(run_cli({"validate", "--samples", "1e2"}).code, kUsageError);
}

TEST(cli, analyze_rejects_bad_input) {
    EXPECT_EQ(run_cli({"analyze", "optimal", "1.5"}).code, kUsageError);
    EXPECT_EQ(run_cli({"analyze", "optimal", "-0.1"}).code, kUsageError);
    EXPECT_EQ(run_cli({"analyze", "nonsense", "0.5"}).code, kUsageError);
    EXPECT_EQ(run_cli({"analyze", "permuted:0,0,1,2", "0.5"}).code, kUsageError);
    EXPECT_EQ(run_cli({"analyze", "permuted:0,1,2", "0.5"}).code, kUsageError);
    EXPECT_EQ(run_cli({"analyze", "file:/does/not/exist.json", "0.5"}).code, kUsageError);
    EXPECT_EQ(run_cli({"analyze", "optimal", "0.5", "--format", "xml"}).code, kUsageError);
    EXPECT_EQ(run_cli({"analyze", "optimal", "0.5", "--mc", "10"}).code, kUsageError);
    EXPECT_EQ(run_cli({"frobnicate"}).code, kUsageError);
    EXPECT_EQ(run_cli({}).code, kUsageError);

    const auto bad = temp_path("bad_scenario.json");
    std::ofstream(bad) << R"({"name": "bad", "U": [{"axis": [0, 0, 1], "angle": 0}]})";
    const RunOutput r = run_cli({"analyze", "file:" + bad.string(), "0.5"});
    EXPECT_EQ(r.code, kUsageError);
    EXPECT_FALSE(r.err.empty());

    std::ofstream(bad) << "{ not json";
    EXPECT_EQ(run_cli({"analyze", "file:" + bad.string(), "0.5"}).code, kUsageError);

    // A scenario whose measurement is not a valid Bell-type measurement.
    std::ofstream(bad) << R"({"name": "bad", "U": [
        {"axis": [0, 0, 1], "angle": 0}, {"axis": [0, 0, 1], "angle": 0},
        {"axis": [0, 0, 1], "angle": 0}, {"axis": [0, 0, 1], "angle": 0}],
        "V": [{"axis": [0, 0, 1], "angle": 0}, {"axis": [0, 0, 1], "angle": 0},
        {"axis": [0, 0, 1], "angle": 0}, {"axis": [0, 0, 1], "angle": 0}]})";
    EXPECT_EQ(run_cli({"analyze", "file:" + bad.string(), "0.5"}).code, kUsageError);
}

TEST(cli, sweep_optimal_fidelity_column) {
    const RunOutput r = run_cli({"sweep", "optimal", "0", "1", "11"});
    ASSERT_EQ(r.code, kSuccess) << r.err;
    const auto rows = parse_csv(r.out);
    ASSERT_EQ(rows.size(), 12u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"p", "F", "D", "F_min", "F_max", "D_upper"}));
    for (std::size_t i = 1; i < rows.size(); ++i) {
        EXPECT_NEAR(std::stod(rows[i][1]), 0.5 + 0.05 * static_cast<double>(i - 1), tol::kExact);
        EXPECT_NEAR(std::stod(rows[i][2]), 0.0, tol::kExact);
    }
}

TEST(cli, sweep_permuted_deviation_column) {
    const ordered_json j = run_json({"sweep", "permuted", "0", "1", "11", "--format", "json"});
    ASSERT_EQ(j["rows"].size(), 11u);
    for (std::size_t i = 0; i < 11; ++i) {
        const double p = static_cast<double>(i) / 10.0;
        EXPECT_NEAR(j["rows"][i]["p"].get<double>(), p, tol::kExact);
        EXPECT_NEAR(j["rows"][i]["D"].get<double>(), 2.0 * p / (3.0 * std::sqrt(5.0)), tol::kExact);
    }
    EXPECT_NEAR(j["rows"][10]["D"].get<double>(), 0.298142, 1e-6);
}

TEST(cli, sweep_rejects_bad_ranges) {
    EXPECT_EQ(run_cli({"sweep", "optimal", "0", "0", "2"}).code, kUsageError);
    EXPECT_EQ(run_cli({"sweep", "optimal", "0.5", "0.2", "3"}).code, kUsageError);
    EXPECT_EQ(run_cli({"sweep", "optimal", "0", "1", "1"}).code, kUsageError);
    EXPECT_EQ(run_cli({"sweep", "optimal", "0", "2", "3"}).code, kUsageError);
}

TEST(cli, region_examples) {
    const ordered_json j = run_json({"region", "1.0", "0.333333", "0.707107"});
    ASSERT_EQ(j["triangles"].size(), 3u);
    auto vertex = [&](std::size_t t, std::size_t k, const char *field) {
        return j["triangles"][t]["vertices"][k][field[0] == 'F' ? 0 : 1].get<double>();
    };
    EXPECT_NEAR(vertex(0, 0, "F"), 1.0, 1e-9);
    EXPECT_NEAR(vertex(0, 1, "F"), 1.0 / 3.0, 1e-9);
    EXPECT_NEAR(vertex(0, 2, "F"), 1.0 / 3.0, 1e-9);
    EXPECT_NEAR(vertex(0, 2, "D"), 0.298142, 1e-6);
    EXPECT_NEAR(vertex(1, 0, "F"), 0.666666, 1e-6);
    EXPECT_NEAR(vertex(1, 1, "F"), 0.444444, 1e-6);
    EXPECT_NEAR(vertex(1, 2, "D"), 0.099381, 1e-6);
    EXPECT_NEAR(vertex(2, 0, "F"), 0.853553, 1e-6);
    ASSERT_EQ(j["half_circle"].size(), 201u);
    EXPECT_EQ(j["half_circle"][100][0].get<double>(), 0.5);
    EXPECT_EQ(j["half_circle"][100][1].get<double>(), 0.5);
    EXPECT_EQ(j["reference_triangles"].size(), 2u);
    EXPECT_NEAR(j["classical_line"]["F"].get<double>(), 2.0 / 3.0, tol::kExact);
    EXPECT_EQ(run_cli({"region", "1.2"}).code, kUsageError);
}

TEST(cli, region_csv) {
    const RunOutput r = run_cli({"region", "--format", "csv"});
    ASSERT_EQ(r.code, kSuccess);
    const auto rows = parse_csv(r.out);
    // Header, 3 default triangles, 2 reference triangles, 201 circle points, 2 line points.
    EXPECT_EQ(rows.size(), 1u + 9u + 6u + 201u + 2u);
    for (const auto &row : rows) {
        EXPECT_EQ(row.size(), 6u);
    }
}

TEST(cli, optimize_pauli) {
    const RunOutput r = run_cli({"optimize", "pauli", "0.5"});
    ASSERT_EQ(r.code, kSuccess) << r.err;
    const ordered_json j = ordered_json::parse(r.out);
    EXPECT_TRUE(j["converged"].get<bool>());
    EXPECT_NEAR(j["F_best"].get<double>(), 0.75, 1e-8);
    EXPECT_EQ(j["best_V"].size(), 4u);
    EXPECT_FALSE(j["trajectory"].empty());
}

TEST(cli, optimize_rotated_measurement_file) {
    const RunOutput r = run_cli({"optimize", "file:" + kScenarioDir + "/rotated_pauli.json", "0.9"});
    ASSERT_EQ(r.code, kSuccess) << r.err;
    EXPECT_NEAR(ordered_json::parse(r.out)["F_best"].get<double>(), 0.95, 1e-8);
}

TEST(cli, optimize_exit_codes) {
    EXPECT_EQ(run_cli({"optimize", "pauli", "0.0"}).code, kUsageError);
    EXPECT_EQ(run_cli({"optimize", "pauli", "0.5", "--max-iters", "1", "--restarts", "1"}).code, kNotConverged);
    EXPECT_EQ(run_cli({"optimize", "file:/does/not/exist.json", "0.5"}).code, kUsageError);
}

TEST(cli, validate_exit_codes) {
    EXPECT_EQ(run_cli({"validate", "--samples", "100"}).code, kUsageError);
    EXPECT_EQ(run_cli({"validate", "--samples", "10000", "--format", "yaml"}).code, kUsageError);

    std::ostringstream out, err;
    Hooks corrupted;
    corrupted.covariance = [](const Rotation3 &a, const Rotation3 &b) {
        return (a.trace() * b.trace() / 15.0 - a.trace() * b.trace() / 9.0) / 4.0;
    };
    EXPECT_EQ(run({"validate", "--samples", "10000", "--format", "json"}, out, err, corrupted), kValidationFailure);
    EXPECT_FALSE(ordered_json::parse(out.str())["passed"].get<bool>());
}

TEST(cli, output_is_byte_identical_across_runs) {
    const std::vector<std::vector<std::string>> commands{
        {"analyze", "random:9", "0.4", "--mc", "30000", "--seed", "5"},
        {"analyze", "random:9", "0.4", "--mc", "30000", "--seed", "5", "--format", "csv"},
        {"sweep", "random:2", "0", "1", "5"},
        {"region"},
        {"optimize", "pauli", "0.8", "--restarts", "2", "--seed", "3"},
    };
    for (const auto &cmd : commands) {
        const RunOutput a = run_cli(cmd);
        const RunOutput b = run_cli(cmd);
        EXPECT_EQ(a.code, b.code);
        EXPECT_EQ(a.out, b.out) << cmd[0];
    }
}

TEST(cli, out_flag_writes_file) {
    const auto path = temp_path("region.json");
    std::filesystem::remove(path);
    const RunOutput r = run_cli({"--out", path.string(), "region", "1.0"});
    ASSERT_EQ(r.code, kSuccess);
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    const ordered_json j = ordered_json::parse(in);
    EXPECT_EQ(j["triangles"].size(), 1u);
    EXPECT_EQ(run_cli({"--out", "/does/not/exist/x.json", "region"}).code, kUsageError);
}

TEST(cli, scenario_round_trip) {
    for (const std::string spec : {"optimal", "permuted:2,3,0,1", "random:17"}) {
        const RunOutput first = run_cli({"scenario", spec});
        ASSERT_EQ(first.code, kSuccess) << first.err;
        const auto path = temp_path("round_trip.json");
        std::ofstream(path) << first.out;

        const Scenario reloaded = parse_scenario("file:" + path.string());
        EXPECT_EQ(reloaded.kind, ScenarioKind::custom);
        EXPECT_EQ(reloaded.name, spec);
        const ProtocolConfig original = parse_scenario(spec).config();
        const ProtocolConfig restored = reloaded.config();
        for (int a = 0; a < 4; ++a) {
            EXPECT_NEAR(std::abs((original.measurement()[a].adjoint() * restored.measurement()[a]).trace()) / 2.0, 1.0,
                        tol::kStructural);
            EXPECT_NEAR(std::abs((original.correction()[a].adjoint() * restored.correction()[a]).trace()) / 2.0, 1.0,
                        tol::kStructural);
        }
        for (double p : {0.3, 1.0}) {
            EXPECT_NEAR(average_fidelity(original, WernerChannel(p)), average_fidelity(restored, WernerChannel(p)),
                        tol::kExact);
            EXPECT_NEAR(fidelity_deviation(original, WernerChannel(p)),
                        fidelity_deviation(restored, WernerChannel(p)), tol::kExact);
        }

        const RunOutput second = run_cli({"scenario", "file:" + path.string()});
        ASSERT_EQ(second.code, kSuccess) << second.err;
        EXPECT_EQ(ordered_json::parse(first.out), ordered_json::parse(second.out)) << spec;
    }
}

TEST(cli, scenario_json_schema) {
    const Scenario s = parse_scenario(kScenarioDir + "/rotated_pauli.json");
    EXPECT_EQ(s.name, "rotated_pauli");
    EXPECT_FALSE(s.v.has_value());
    EXPECT_THROW(s.config(), UsageError);
    const ordered_json j = scenario_to_json(s);
    EXPECT_FALSE(j.contains("V"));
    EXPECT_EQ(scenario_to_json(scenario_from_json(j)), j);
    EXPECT_THROW(scenario_from_json(ordered_json::array()), UsageError);
    EXPECT_THROW(scenario_from_json(ordered_json{{"U", "x"}}), UsageError);
}

TEST(cli, format_number_round_trips) {
    for (double x : {1.0 / 3.0, 0.1, 2.0 / (3.0 * std::sqrt(5.0)), 1e-300, 0.0}) {
        EXPECT_EQ(std::stod(format_number(x)), x);
    }
    EXPECT_EQ(format_number(1.0), "1");
}
