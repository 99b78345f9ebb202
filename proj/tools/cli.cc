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
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "telefid/measures.h"
#include "telefid/montecarlo.h"
#include "telefid/optimizer.h"
#include "telefid/random.h"
#include "telefid/validation.h"

namespace telefid::cli {

using nlohmann::ordered_json;

namespace {

constexpr std::size_t kHalfCirclePoints = 201;

std::array<AxisAngle, 4> pauli_axis_angles() {
    std::array<AxisAngle, 4> out;
    for (int a = 0; a < 4; ++a) {
        out[a] = axis_angle_from_unitary(pauli(a));
    }
    return out;
}

UnitaryQuad unitaries(const std::array<AxisAngle, 4> &aa) {
    UnitaryQuad u;
    for (std::size_t a = 0; a < 4; ++a) {
        u[a] = unitary_from_axis_angle(aa[a]);
    }
    return u;
}

std::uint64_t parse_u64(const std::string &text, const std::string &what) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(text, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used == 0 || used != text.size() || text.front() == '-') {
        throw UsageError("invalid " + what + ": '" + text + "'");
    }
    return v;
}

// Sample counts also accept integral scientific notation such as 1e6.
std::size_t parse_count(const std::string &text, const std::string &what) {
    if (text.find_first_of("eE.") == std::string::npos) {
        return parse_u64(text, what);
    }
    std::size_t used = 0;
    double v = -1.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used != text.size() || !(v >= 0.0) || v > 9007199254740992.0 || v != std::floor(v)) {
        throw UsageError("invalid " + what + ": '" + text + "'");
    }
    return static_cast<std::size_t>(v);
}

std::array<int, 4> parse_permutation(const std::string &text) {
    std::array<int, 4> perm{};
    std::stringstream ss(text);
    std::string item;
    std::size_t k = 0;
    while (std::getline(ss, item, ',')) {
        if (k == 4 || item.size() != 1 || item[0] < '0' || item[0] > '3') {
            throw UsageError("permutation must be four comma-separated indices in 0..3: '" + text + "'");
        }
        perm[k++] = item[0] - '0';
    }
    if (k != 4 || std::set<int>(perm.begin(), perm.end()).size() != 4) {
        throw UsageError("permutation must be a bijection on {0,1,2,3}: '" + text + "'");
    }
    return perm;
}

ordered_json axis_angle_json(const AxisAngle &aa) {
    return {{"axis", {aa.axis.x(), aa.axis.y(), aa.axis.z()}}, {"angle", aa.angle}};
}

AxisAngle axis_angle_from_json(const ordered_json &j) {
    if (!j.is_object() || !j.contains("axis") || !j.contains("angle")) {
        throw UsageError("each unitary needs an \"axis\" and an \"angle\"");
    }
    const ordered_json &axis = j.at("axis");
    if (!axis.is_array() || axis.size() != 3 || !j.at("angle").is_number()) {
        throw UsageError("axis must be three numbers and angle a number");
    }
    Vec3 v;
    for (int i = 0; i < 3; ++i) {
        if (!axis[i].is_number()) {
            throw UsageError("axis components must be numbers");
        }
        v[i] = axis[i].get<double>();
    }
    const double n = v.norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw UsageError("rotation axis must be nonzero");
    }
    if (std::abs(n - 1.0) > tol::kExact) {
        v /= n;
    }
    return {v, j.at("angle").get<double>()};
}

std::array<AxisAngle, 4> quad_from_json(const ordered_json &j, const char *key) {
    const ordered_json &list = j.at(key);
    if (!list.is_array() || list.size() != 4) {
        throw UsageError(std::string("\"") + key + "\" must list exactly four unitaries");
    }
    std::array<AxisAngle, 4> out;
    for (std::size_t a = 0; a < 4; ++a) {
        out[a] = axis_angle_from_json(list[a]);
    }
    return out;
}

Scenario load_scenario_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot open scenario file '" + path + "'");
    }
    ordered_json j;
    try {
        j = ordered_json::parse(in);
    } catch (const nlohmann::json::exception &e) {
        throw UsageError("scenario file '" + path + "' is not valid JSON: " + e.what());
    }
    Scenario s = scenario_from_json(j);
    if (s.name.empty()) {
        s.name = path;
    }
    return s;
}

double checked_p(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw UsageError("noise parameter p must lie in [0, 1]");
    }
    return p;
}

ordered_json point_json(const PerformancePoint &pt) { return ordered_json::array({pt.fidelity, pt.deviation}); }

ordered_json triangle_json(const RegionTriangle &t) {
    ordered_json vertices = ordered_json::array();
    for (const PerformancePoint &v : t.vertices) {
        vertices.push_back(point_json(v));
    }
    return {{"p", t.p},
            {"classification", std::string(to_string(classify_channel(WernerChannel(t.p))))},
            {"F_min", t.f_min()},
            {"F_max", t.f_max()},
            {"D_max", t.d_max()},
            {"vertices", vertices}};
}

std::string csv_cell(const std::string &cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) {
        return cell;
    }
    std::string quoted = "\"";
    for (char ch : cell) {
        quoted += ch == '"' ? "\"\"" : std::string(1, ch);
    }
    return quoted + "\"";
}

void emit_csv_row(std::ostream &out, const std::vector<std::string> &cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        out << (i ? "," : "") << csv_cell(cells[i]);
    }
    out << '\n';
}

std::string format_choice(const std::string &format) {
    if (format != "json" && format != "csv") {
        throw UsageError("--format must be json or csv");
    }
    return format;
}

struct AnalyzeArgs {
    std::string scenario = "optimal";
    double p = 1.0;
    std::size_t mc = 0;
    std::uint64_t seed = 0;
    std::string format = "json";
};

void cmd_analyze(const AnalyzeArgs &args, std::ostream &out) {
    const Scenario scenario = parse_scenario(args.scenario);
    const WernerChannel channel(checked_p(args.p));
    const ProtocolConfig config = scenario.config();

    const double f = average_fidelity(config, channel);
    const double d = fidelity_deviation(config, channel);
    const FidelityBounds fb = f_bounds(channel);
    const DeviationBounds db = d_bounds(config, channel);
    const double ceiling = half_circle_bound(std::clamp(f, 0.0, 1.0));
    const RegionTriangle tri = region_triangle(channel);
    const std::string cls(to_string(classify_channel(channel)));

    std::optional<Estimate> mc_f, mc_d;
    if (args.mc > 0) {
        const SamplerConfig sampler = SamplerConfig::with_samples(args.seed, args.mc);
        try {
            sampler.validate();
        } catch (const std::invalid_argument &e) {
            throw UsageError(e.what());
        }
        const MomentAccumulator acc =
            accumulate(sampler, [&](const BlochVector &v) { return state_fidelity(v, config, channel); });
        mc_f = acc.mean_estimate();
        mc_d = acc.deviation_estimate();
    }

    if (args.format == "json") {
        ordered_json j;
        j["scenario"] = scenario.name;
        j["p"] = channel.p();
        j["analytic"] = {{"F", f}, {"D", d}};
        j["bounds"] = {{"F_min", fb.min},   {"F_max", fb.max},   {"D_lower", db.lower},
                       {"D_upper", db.upper}, {"half_circle", ceiling}};
        if (mc_f) {
            j["monte_carlo"] = {{"samples", args.mc},
                                {"seed", args.seed},
                                {"F", {{"mean", mc_f->mean}, {"std_error", mc_f->std_error}}},
                                {"D", {{"mean", mc_d->mean}, {"std_error", mc_d->std_error}}}};
        }
        j["classification"] = cls;
        j["region"] = triangle_json(tri);
        out << j.dump(2) << '\n';
        return;
    }

    std::vector<std::string> header{"scenario", "p",       "F",           "D",
                                    "F_min",    "F_max",   "D_lower",     "D_upper",
                                    "half_circle", "classification"};
    std::vector<std::string> row{scenario.name,          format_number(channel.p()), format_number(f),
                                 format_number(d),       format_number(fb.min),      format_number(fb.max),
                                 format_number(db.lower), format_number(db.upper),   format_number(ceiling),
                                 cls};
    if (mc_f) {
        header.insert(header.end(), {"mc_samples", "mc_seed", "mc_F", "mc_F_std_error", "mc_D", "mc_D_std_error"});
        row.insert(row.end(), {std::to_string(args.mc), std::to_string(args.seed), format_number(mc_f->mean),
                               format_number(mc_f->std_error), format_number(mc_d->mean),
                               format_number(mc_d->std_error)});
    }
    header.insert(header.end(), {"region_F_max", "region_F_min", "region_D_max"});
    row.insert(row.end(), {format_number(tri.f_max()), format_number(tri.f_min()), format_number(tri.d_max())});
    emit_csv_row(out, header);
    emit_csv_row(out, row);
}

struct SweepArgs {
    std::string scenario = "optimal";
    double p_start = 0.0;
    double p_end = 1.0;
    std::size_t steps = 11;
    std::string format = "csv";
};

void cmd_sweep(const SweepArgs &args, std::ostream &out) {
    checked_p(args.p_start);
    checked_p(args.p_end);
    if (!(args.p_start < args.p_end) || args.steps < 2) {
        throw UsageError("sweep needs 0 <= p_start < p_end <= 1 and steps >= 2");
    }
    const Scenario scenario = parse_scenario(args.scenario);
    const ProtocolConfig config = scenario.config();
    const std::vector<std::string> header{"p", "F", "D", "F_min", "F_max", "D_upper"};

    ordered_json rows = ordered_json::array();
    if (args.format == "csv") {
        emit_csv_row(out, header);
    }
    for (std::size_t i = 0; i < args.steps; ++i) {
        const double p = i + 1 == args.steps
                             ? args.p_end
                             : args.p_start + (args.p_end - args.p_start) * static_cast<double>(i) /
                                                  static_cast<double>(args.steps - 1);
        const WernerChannel channel(p);
        const FidelityBounds fb = f_bounds(channel);
        const std::array<double, 6> values{p,      average_fidelity(config, channel), fidelity_deviation(config, channel),
                                           fb.min, fb.max,                            d_bounds(config, channel).upper};
        if (args.format == "csv") {
            std::vector<std::string> cells;
            for (double v : values) {
                cells.push_back(format_number(v));
            }
            emit_csv_row(out, cells);
        } else {
            ordered_json row;
            for (std::size_t k = 0; k < header.size(); ++k) {
                row[header[k]] = values[k];
            }
            rows.push_back(row);
        }
    }
    if (args.format == "json") {
        out << ordered_json{{"scenario", scenario.name}, {"rows", rows}}.dump(2) << '\n';
    }
}

struct RegionArgs {
    std::vector<double> p_list;
    std::string format = "json";
};

void cmd_region(const RegionArgs &args, std::ostream &out) {
    std::vector<double> ps = args.p_list;
    if (ps.empty()) {
        ps = {1.0, thresholds::kChsh, thresholds::kSeparability};
    }
    for (double p : ps) {
        checked_p(p);
    }
    std::vector<RegionTriangle> triangles;
    for (double p : ps) {
        triangles.push_back(region_triangle(WernerChannel(p)));
    }
    const std::array<std::pair<const char *, double>, 2> references{
        {{"p_C", thresholds::kSeparability}, {"p_BV", thresholds::kChsh}}};
    std::vector<PerformancePoint> circle;
    for (std::size_t i = 0; i < kHalfCirclePoints; ++i) {
        const double f = static_cast<double>(i) / static_cast<double>(kHalfCirclePoints - 1);
        circle.push_back({f, half_circle_bound(f)});
    }
    const double fc = thresholds::kClassicalFidelity;
    const std::array<PerformancePoint, 2> classical{{{fc, 0.0}, {fc, half_circle_bound(fc)}}};

    if (args.format == "json") {
        ordered_json j;
        j["triangles"] = ordered_json::array();
        for (const RegionTriangle &t : triangles) {
            j["triangles"].push_back(triangle_json(t));
        }
        j["reference_triangles"] = ordered_json::array();
        for (const auto &[label, p] : references) {
            ordered_json t = triangle_json(region_triangle(WernerChannel(p)));
            t["label"] = label;
            j["reference_triangles"].push_back(t);
        }
        j["half_circle"] = ordered_json::array();
        for (const PerformancePoint &pt : circle) {
            j["half_circle"].push_back(point_json(pt));
        }
        j["classical_line"] = {{"F", fc}, {"points", {point_json(classical[0]), point_json(classical[1])}}};
        j["thresholds"] = {{"p_separability", thresholds::kSeparability},
                           {"p_CHSH", thresholds::kChsh},
                           {"p_LHV_lower", thresholds::kLhvLower},
                           {"p_LHV_upper", thresholds::kLhvUpper},
                           {"F_classical", thresholds::kClassicalFidelity}};
        out << j.dump(2) << '\n';
        return;
    }

    emit_csv_row(out, {"series", "label", "p", "index", "F", "D"});
    auto emit_triangle = [&](const std::string &series, const std::string &label, const RegionTriangle &t) {
        for (std::size_t k = 0; k < 3; ++k) {
            emit_csv_row(out, {series, label, format_number(t.p), std::to_string(k),
                               format_number(t.vertices[k].fidelity), format_number(t.vertices[k].deviation)});
        }
    };
    for (const RegionTriangle &t : triangles) {
        emit_triangle("triangle", std::string(to_string(classify_channel(WernerChannel(t.p)))), t);
    }
    for (const auto &[label, p] : references) {
        emit_triangle("reference_triangle", label, region_triangle(WernerChannel(p)));
    }
    for (std::size_t k = 0; k < circle.size(); ++k) {
        emit_csv_row(out, {"half_circle", "", "", std::to_string(k), format_number(circle[k].fidelity),
                           format_number(circle[k].deviation)});
    }
    for (std::size_t k = 0; k < classical.size(); ++k) {
        emit_csv_row(out, {"classical_line", "F_classical", "", std::to_string(k),
                           format_number(classical[k].fidelity), format_number(classical[k].deviation)});
    }
}

struct OptimizeArgs {
    std::string source = "pauli";
    double p = 0.5;
    OptimizerConfig cfg;
};

int cmd_optimize(const OptimizeArgs &args, std::ostream &out) {
    const WernerChannel channel(checked_p(args.p));
    UnitaryQuad measurement;
    if (args.source == "pauli") {
        measurement = pauli_quad();
    } else {
        const std::string path = args.source.rfind("file:", 0) == 0 ? args.source.substr(5) : args.source;
        measurement = unitaries(load_scenario_file(path).u);
    }
    const OptimizationResult r = optimize_corrections(measurement, channel, args.cfg);

    ordered_json j;
    j["U_source"] = args.source;
    j["p"] = channel.p();
    j["F_max"] = f_bounds(channel).max;
    j["F_best"] = r.f_best;
    j["D_at_best"] = r.d_at_best;
    j["converged"] = r.converged;
    j["best_V"] = ordered_json::array();
    for (const AxisAngle &aa : r.best_v) {
        j["best_V"].push_back(axis_angle_json(aa));
    }
    j["config"] = {{"restarts", args.cfg.restarts},
                   {"max_iters", args.cfg.max_iters},
                   {"tol", args.cfg.tol},
                   {"seed", args.cfg.seed}};
    j["trajectory"] = ordered_json::array();
    for (const auto &[iteration, f] : r.trajectory) {
        j["trajectory"].push_back({iteration, f});
    }
    out << j.dump(2) << '\n';
    return r.converged ? kSuccess : kNotConverged;
}

struct ValidateArgs {
    std::size_t samples = 1000000;
    std::uint64_t seed = 7;
    std::string format = "text";
};

int cmd_validate(const ValidateArgs &args, std::ostream &out, const Hooks &hooks) {
    if (args.samples < kMinValidationSamples) {
        throw UsageError("validate needs --samples >= " + std::to_string(kMinValidationSamples));
    }
    ValidationOptions options;
    options.samples = args.samples;
    options.seed = args.seed;
    options.covariance = hooks.covariance;
    const ValidationReport report = run_validation(options);

    if (args.format == "json") {
        ordered_json j;
        j["samples"] = args.samples;
        j["seed"] = args.seed;
        j["passed"] = report.passed();
        j["checks"] = ordered_json::array();
        for (const CheckResult &c : report.checks) {
            j["checks"].push_back({{"name", c.name},
                                   {"passed", c.passed()},
                                   {"comparisons", c.comparisons},
                                   {"misses", c.misses},
                                   {"allowed_misses", c.allowed},
                                   {"worst", c.worst}});
        }
        out << j.dump(2) << '\n';
    } else {
        for (const CheckResult &c : report.checks) {
            char line[160];
            std::snprintf(line, sizeof line, "%s %-20s comparisons=%zu misses=%zu allowed=%zu worst=%.3g",
                          c.passed() ? "PASS" : "FAIL", c.name.c_str(), c.comparisons, c.misses, c.allowed, c.worst);
            out << line << '\n';
        }
        out << (report.passed() ? "validation passed" : "validation FAILED") << '\n';
    }
    return report.passed() ? kSuccess : kValidationFailure;
}

}  // namespace

ProtocolConfig Scenario::config() const {
    try {
        switch (kind) {
            case ScenarioKind::optimal:
                return ProtocolConfig::optimal_pauli();
            case ScenarioKind::permuted: {
                UnitaryQuad v;
                for (std::size_t a = 0; a < 4; ++a) {
                    v[a] = pauli(permutation[a]);
                }
                return ProtocolConfig(pauli_quad(), v);
            }
            case ScenarioKind::random: {
                Rng rng = stream_rng(seed, 0);
                return random_protocol(rng);
            }
            case ScenarioKind::custom:
                if (!v) {
                    throw UsageError("scenario '" + name + "' has no correction unitaries \"V\"");
                }
                return ProtocolConfig(unitaries(u), unitaries(*v));
        }
    } catch (const ConfigError &e) {
        throw UsageError("scenario '" + name + "': " + e.what());
    }
    throw UsageError("unknown scenario kind");
}

Scenario parse_scenario(const std::string &spec) {
    Scenario s;
    s.name = spec;
    if (spec == "optimal") {
        s.kind = ScenarioKind::optimal;
    } else if (spec == "permuted") {
        s.kind = ScenarioKind::permuted;
        s.name = "permuted:1,0,3,2";
    } else if (spec.rfind("permuted:", 0) == 0) {
        s.kind = ScenarioKind::permuted;
        s.permutation = parse_permutation(spec.substr(9));
    } else if (spec == "random") {
        s.kind = ScenarioKind::random;
        s.name = "random:0";
    } else if (spec.rfind("random:", 0) == 0) {
        s.kind = ScenarioKind::random;
        s.seed = parse_u64(spec.substr(7), "random seed");
    } else if (spec.rfind("file:", 0) == 0) {
        return load_scenario_file(spec.substr(5));
    } else if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json") {
        return load_scenario_file(spec);
    } else {
        throw UsageError("unknown scenario '" + spec + "'");
    }
    return s;
}

Scenario scenario_from_json(const ordered_json &j) {
    if (!j.is_object() || !j.contains("U")) {
        throw UsageError("scenario JSON must be an object with a \"U\" list");
    }
    Scenario s;
    s.kind = ScenarioKind::custom;
    if (j.contains("name")) {
        if (!j.at("name").is_string()) {
            throw UsageError("scenario \"name\" must be a string");
        }
        s.name = j.at("name").get<std::string>();
    }
    s.u = quad_from_json(j, "U");
    if (j.contains("V")) {
        s.v = quad_from_json(j, "V");
    }
    return s;
}

ordered_json scenario_to_json(const Scenario &s) {
    ordered_json j;
    j["name"] = s.name;
    j["U"] = ordered_json::array();
    for (const AxisAngle &aa : s.u) {
        j["U"].push_back(axis_angle_json(aa));
    }
    if (s.v) {
        j["V"] = ordered_json::array();
        for (const AxisAngle &aa : *s.v) {
            j["V"].push_back(axis_angle_json(aa));
        }
    }
    return j;
}

Scenario custom_from_config(const std::string &name, const ProtocolConfig &config) {
    Scenario s;
    s.name = name;
    s.kind = ScenarioKind::custom;
    std::array<AxisAngle, 4> v;
    for (std::size_t a = 0; a < 4; ++a) {
        s.u[a] = axis_angle_from_unitary(config.measurement()[a]);
        v[a] = axis_angle_from_unitary(config.correction()[a]);
    }
    s.v = v;
    return s;
}

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err, const Hooks &hooks) {
    CLI::App app{"Average fidelity and fidelity deviation of teleportation through a Werner channel", "telefid"};
    app.require_subcommand(1);
    std::string out_path;
    app.add_option("--out", out_path, "Write output to this file instead of standard output");

    AnalyzeArgs analyze;
    auto *analyze_cmd = app.add_subcommand("analyze", "Closed-form F, D, bounds and region for one scenario");
    analyze_cmd->add_option("scenario,--scenario", analyze.scenario, "optimal | permuted[:a,b,c,d] | random:<seed> | file:<path>");
    analyze_cmd->add_option("p,--p", analyze.p, "Werner noise parameter in [0, 1]");
    std::string mc_text;
    analyze_cmd->add_option("--mc", mc_text, "Also estimate F and D from this many Haar samples");
    analyze_cmd->add_option("--seed", analyze.seed, "Seed for --mc");
    analyze_cmd->add_option("--format", analyze.format, "json | csv");

    SweepArgs sweep;
    auto *sweep_cmd = app.add_subcommand("sweep", "F, D and bounds on a uniform p grid");
    sweep_cmd->add_option("scenario,--scenario", sweep.scenario, "Scenario spec")->required();
    sweep_cmd->add_option("p_start", sweep.p_start)->required();
    sweep_cmd->add_option("p_end", sweep.p_end)->required();
    sweep_cmd->add_option("steps", sweep.steps)->required();
    sweep_cmd->add_option("--format", sweep.format, "csv | json");

    RegionArgs region;
    auto *region_cmd = app.add_subcommand("region", "Triangle vertices, half circle and thresholds for plotting");
    region_cmd->add_option("p_list,--p", region.p_list, "Noise parameters (default: 1, 1/sqrt2, 1/3)");
    region_cmd->add_option("--format", region.format, "json | csv");

    OptimizeArgs optimize;
    auto *optimize_cmd = app.add_subcommand("optimize", "Search correction unitaries that maximize F");
    optimize_cmd->add_option("source,--source", optimize.source, "pauli | file:<path>")->required();
    optimize_cmd->add_option("p,--p", optimize.p, "Werner noise parameter in (0, 1]")->required();
    optimize_cmd->add_option("--restarts", optimize.cfg.restarts);
    optimize_cmd->add_option("--max-iters", optimize.cfg.max_iters);
    optimize_cmd->add_option("--tol", optimize.cfg.tol);
    optimize_cmd->add_option("--seed", optimize.cfg.seed);

    ValidateArgs validate;
    auto *validate_cmd = app.add_subcommand("validate", "Run every closed form against its Monte-Carlo oracle");
    std::string samples_text;
    validate_cmd->add_option("--samples", samples_text, "Haar samples per estimate (>= 10000)");
    validate_cmd->add_option("--seed", validate.seed);
    validate_cmd->add_option("--format", validate.format, "text | json");

    std::string scenario_spec;
    auto *scenario_cmd = app.add_subcommand("scenario", "Write any scenario as an editable custom scenario file");
    scenario_cmd->add_option("scenario", scenario_spec)->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &e) {
        app.exit(e, out, err);
        return kSuccess;
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return kUsageError;
    }

    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) {
            err << "error: cannot write '" << out_path << "'\n";
            return kUsageError;
        }
    }
    std::ostream &sink = out_path.empty() ? out : file;

    try {
        if (*analyze_cmd) {
            format_choice(analyze.format);
            if (!mc_text.empty()) {
                analyze.mc = parse_count(mc_text, "--mc");
            }
            cmd_analyze(analyze, sink);
        } else if (*sweep_cmd) {
            format_choice(sweep.format);
            cmd_sweep(sweep, sink);
        } else if (*region_cmd) {
            format_choice(region.format);
            cmd_region(region, sink);
        } else if (*optimize_cmd) {
            return cmd_optimize(optimize, sink);
        } else if (*validate_cmd) {
            if (!samples_text.empty()) {
                validate.samples = parse_count(samples_text, "--samples");
            }
            if (validate.format != "text" && validate.format != "json") {
                throw UsageError("--format must be text or json");
            }
            return cmd_validate(validate, sink, hooks);
        } else if (*scenario_cmd) {
            const Scenario s = parse_scenario(scenario_spec);
            const ProtocolConfig config = s.config();
            const Scenario custom = s.kind == ScenarioKind::custom ? s : custom_from_config(s.name, config);
            sink << scenario_to_json(custom).dump(2) << '\n';
        }
    } catch (const UsageError &e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::invalid_argument &e) {
        // Covers ConfigError and FlatObjectiveError.
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }
    return kSuccess;
}

}  // namespace telefid::cli
