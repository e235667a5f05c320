// Copyright 2026 The pmst Authors
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

#include "pmst/cli/commands.hpp"

#include <cmath>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pmst/bounds.hpp"
#include "pmst/certify.hpp"
#include "pmst/error.hpp"
#include "pmst/io.hpp"
#include "pmst/real_family.hpp"
#include "pmst/selftest.hpp"
#include "pmst/simulator.hpp"
#include "pmst/witness.hpp"

namespace pmst::cli {

namespace {

using nlohmann::json;

constexpr const char *kVersion = "0.1.0";

struct Globals {
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "text";
    bool machine() const { return format == "machine"; }
};

// Everything a subcommand needs to produce its results.
struct Context {
    Globals globals;
    std::istream &in;
    std::ostream &out;
    std::ostream &err;
    std::vector<std::string> args;
};

std::string num(double v, int precision = 10) {
    std::ostringstream s;
    s << std::setprecision(precision) << v;
    return s.str();
}

std::string vec_text(const Vec3 &v) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(6) << "(" << std::setw(9) << v(0) << ", " << std::setw(9) << v(1) << ", "
      << std::setw(9) << v(2) << ")";
    return s.str();
}

std::string join(const std::vector<std::string> &parts, const std::string &sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
    return out;
}

RunRecord make_record(const Context &ctx, const std::string &command,
                      std::vector<std::pair<std::string, std::string>> config, bool timestamp = true) {
    RunRecord run;
    run.version = kVersion;
    run.command = "pmst " + join(ctx.args, " ");
    run.config = std::move(config);
    run.config.emplace_back("subcommand", command);
    run.config.emplace_back("format", ctx.globals.format);
    run.seeds = {ctx.globals.seed};
    if (timestamp) run.timestamp = utc_timestamp();
    return run;
}

// Reads a path, or standard input for "-".
std::string read_input(Context &ctx, const std::string &path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << ctx.in.rdbuf();
        return ss.str();
    }
    return read_file(path);
}

// Writes the primary artifact to --out, or to `out` when no path is given.
void emit(Context &ctx, const std::string &content) {
    if (ctx.globals.out.empty() || ctx.globals.out == "-") {
        ctx.out << content;
    } else {
        atomic_write(ctx.globals.out, content);
    }
}

json vecs_json(std::span<const Vec3> vs) {
    json a = json::array();
    for (const auto &v : vs) a.push_back({v(0), v(1), v(2)});
    return a;
}

json scenario_json(const PMScenario &sc) {
    json meas = json::array();
    for (const auto &m : sc.measurements) {
        meas.push_back({{"bias", m.bias()}, {"direction", {m.direction()(0), m.direction()(1), m.direction()(2)}}});
    }
    return {{"states", vecs_json(sc.state_vectors())}, {"measurements", meas}};
}

std::vector<Vec3> parse_vectors(const json &j, const char *what) {
    if (!j.is_array()) fail(ErrorCode::MalformedFile, std::string(what) + " must be a list of triples");
    std::vector<Vec3> out;
    for (const auto &e : j) {
        if (!e.is_array() || e.size() != 3) fail(ErrorCode::MalformedFile, std::string(what) + " entries must be triples");
        out.emplace_back(e.at(0).get<double>(), e.at(1).get<double>(), e.at(2).get<double>());
    }
    return out;
}

template <typename F> auto json_guard(F &&f) -> decltype(f()) {
    try {
        return f();
    } catch (const json::exception &e) {
        fail(ErrorCode::MalformedFile, e.what());
    }
}

// --- construct --------------------------------------------------------------

struct ConstructArgs {
    std::string method;
    std::string states;
    double c = 1.0;
    double k = 1.0;
    bool allow_degenerate = false;
    bool no_double = false;
    int check_starts = 64;
};

std::string params_text(const WitnessBundle &b) {
    std::ostringstream s;
    std::visit(
        [&](const auto &p) {
            using T = std::decay_t<decltype(p)>;
            auto list = [&](const auto &xs) {
                std::vector<std::string> parts;
                for (double x : xs) parts.push_back(num(x));
                return "(" + join(parts, ", ") + ")";
            };
            if constexpr (std::is_same_v<T, FourByThreeParams>) {
                s << "p = " << list(p.p) << "\nq = " << list(p.q) << "\n";
            } else if constexpr (std::is_same_v<T, UmbrellaParams>) {
                s << "c = " << num(p.c) << "\np = " << list(p.pq.p) << "\nq = " << list(p.pq.q) << "\n";
            } else if constexpr (std::is_same_v<T, GeneralParams>) {
                s << "r = " << list(p.r) << "\neigenvalues = " << list(p.eigenvalues) << "\nmu =\n"
                  << p.mu.format(Eigen::IOFormat(10, 0, "  ", "\n", "  ")) << "\nhessian rank = " << p.hessian_rank
                  << "\n";
            } else if constexpr (std::is_same_v<T, PairwiseParams>) {
                s << "F =\n" << p.F.format(Eigen::IOFormat(10, 0, "  ", "\n", "  ")) << "\ntau = " << list(p.tau)
                  << "\nequilibrium residual = " << num(p.equilibrium_residual, 3) << "\n";
            }
        },
        b.params);
    return s.str();
}

std::string bundle_summary(const WitnessBundle &b) {
    std::ostringstream s;
    s << "construction: " << construction_name(b.construction) << (b.doubled ? " (rows doubled)" : "") << "\n";
    s << "w (" << b.witness.num_states() << "x" << b.witness.num_measurements() << "):\n"
      << b.witness.coefficients().format(Eigen::IOFormat(10, 0, "  ", "\n", "  ")) << "\n";
    s << params_text(b);
    s << "ideal maximum: " << num(b.ideal_value, 15) << "\n";
    if (b.witness.penalty()) s << "target POVM attached, k = " << num(*b.witness.penalty()) << "\n";
    s << "states:\n";
    for (const auto &m : b.states) s << "  " << vec_text(m) << "\n";
    s << "measurements:\n";
    for (const auto &v : b.measurements) s << "  " << vec_text(v) << "\n";
    for (const auto &w : b.warnings) s << "warning: " << w << "\n";
    return s.str();
}

WitnessBundle construct_bundle(Context &ctx, const ConstructArgs &a) {
    const auto method = parse_construction(a.method);
    if (method == Construction::Umbrella) return umbrella(a.c);
    if (a.states.empty()) fail(ErrorCode::InvalidInput, "--states is required for method " + a.method);
    const std::string text = read_input(ctx, a.states);
    return json_guard([&]() -> WitnessBundle {
        const json j = json::parse(text);
        std::vector<Vec3> m;
        if (j.contains("states")) m = parse_vectors(j.at("states"), "states");
        switch (method) {
        case Construction::FourByThree: {
            FourByThreeOptions o;
            o.reject_degenerate = !a.allow_degenerate && a.no_double;
            o.penalty = a.k;
            if (j.contains("p")) {
                const auto p = j.at("p").get<std::vector<double>>();
                if (p.size() != 4) fail(ErrorCode::MalformedFile, "p must have four entries");
                o.p = std::array<double, 4>{p[0], p[1], p[2], p[3]};
            }
            return build_4x3(m, o);
        }
        case Construction::General: {
            if (!j.contains("r")) fail(ErrorCode::MalformedFile, "general construction needs r");
            GeneralOptions o;
            o.reject_degenerate = !a.allow_degenerate && a.no_double;
            o.penalty = a.k;
            return build_general(m, j.at("r").get<std::vector<double>>(), o);
        }
        case Construction::FourBySix: {
            if (j.contains("povm")) {
                const auto &p = j.at("povm");
                Povm povm(p.at("weights").get<std::vector<double>>(), parse_vectors(p.at("vectors"), "povm vectors"));
                return build_4x6(povm, a.k);
            }
            if (j.contains("coefficients")) {
                return build_pairwise(m, j.at("coefficients").get<std::vector<double>>(),
                                      j.value("allow_signed", false));
            }
            std::vector<Vec3> n;
            for (const auto &v : m) n.emplace_back(-v);
            return build_4x6(povm_from_bloch(n), a.k);
        }
        case Construction::Umbrella: break;
        }
        fail(ErrorCode::InvalidInput, "unsupported method");
    });
}

int cmd_construct(Context &ctx, const ConstructArgs &a) {
    WitnessBundle b;
    try {
        b = construct_bundle(ctx, a);
    } catch (const Error &e) {
        if (e.code() != ErrorCode::DegenerateAdvantage) throw;
        // Rebuild without the check and double the rows.
        ConstructArgs relaxed = a;
        relaxed.allow_degenerate = true;
        b = double_rows(construct_bundle(ctx, relaxed));
        b.warnings.push_back(std::string("rows doubled: ") + e.what());
    }
    if (!a.no_double && !a.allow_degenerate && !b.doubled && a.check_starts > 0) {
        BoundOptions bo;
        bo.starts = a.check_starts;
        bo.seed = ctx.globals.seed;
        b = ensure_genuine_optimum(b, bo);
    }

    std::vector<std::pair<std::string, std::string>> config{{"method", a.method}, {"k", num(a.k, 17)}};
    if (!a.states.empty()) config.emplace_back("states", a.states);
    if (parse_construction(a.method) == Construction::Umbrella) config.emplace_back("c", num(a.c, 17));
    auto run = make_record(ctx, "construct", config);
    if (!a.states.empty() && a.states != "-") run.artifacts.emplace_back(a.states, sha256_hex(read_file(a.states)));
    const std::string bundle_text = bundle_to_json(b, run);

    const bool to_file = !ctx.globals.out.empty() && ctx.globals.out != "-";
    emit(ctx, bundle_text);
    std::ostream &summary = to_file ? ctx.out : ctx.err;
    if (ctx.globals.machine()) {
        json j = {{"construction", construction_name(b.construction)},
                  {"rows", b.witness.num_states()},
                  {"columns", b.witness.num_measurements()},
                  {"ideal_value", b.ideal_value},
                  {"doubled", b.doubled},
                  {"warnings", b.warnings},
                  {"sha256", sha256_hex(bundle_text)}};
        summary << j.dump(2) << "\n";
    } else {
        summary << bundle_summary(b);
    }
    return kExitOk;
}

// --- bounds -----------------------------------------------------------------

struct BoundsArgs {
    std::string bundle;
    std::optional<double> c;
    bool sweep = false;
    std::string model = "all";
    int starts = 0;
    bool genuine_only = false;
    bool grid = false;
};

std::vector<Model> selected_models(const std::string &name) {
    if (name == "all") return {Model::Classical, Model::RealQubit, Model::ComplexQubit};
    return {parse_model(name)};
}

json bound_json(const BoundResult &r) {
    return {{"model", model_name(r.model)},
            {"value", r.value},
            {"genuine_value", r.genuine_value},
            {"starts", r.starts_used},
            {"seed", r.seed},
            {"converged_fraction", r.converged_fraction},
            {"argmax", scenario_json(r.argmax)}};
}

std::string bound_text(const BoundResult &r) {
    std::ostringstream s;
    s << model_name(r.model) << ": " << num(r.value, 12);
    if (r.model != Model::Classical) {
        s << "  (starts " << r.starts_used << ", seed " << r.seed << ", converged " << num(100.0 * r.converged_fraction, 4)
          << "%)";
    }
    s << "\n";
    for (std::size_t x = 0; x < r.argmax.states.size(); ++x) {
        s << "  m" << x + 1 << " = " << vec_text(r.argmax.states[x].bloch()) << "\n";
    }
    for (std::size_t y = 0; y < r.argmax.measurements.size(); ++y) {
        const auto &m = r.argmax.measurements[y];
        if (m.is_degenerate()) {
            s << "  v" << y + 1 << " = fixed outcome " << (m.bias() > 0 ? 0 : 1) << "\n";
        } else {
            s << "  v" << y + 1 << " = " << vec_text(m.direction()) << "\n";
        }
    }
    return s.str();
}

int cmd_bounds(Context &ctx, const BoundsArgs &a) {
    BoundOptions bo;
    bo.starts = a.starts;
    bo.seed = ctx.globals.seed;
    bo.allow_degenerate = !a.genuine_only;
    bo.keep_configurations = false;
    std::vector<std::pair<std::string, std::string>> config{{"model", a.model},
                                                            {"starts", std::to_string(a.starts)},
                                                            {"genuine_only", a.genuine_only ? "true" : "false"}};

    if (a.sweep) {
        std::ostringstream csv;
        auto run = make_record(ctx, "bounds", config, false);
        csv << "# tool: pmst " << kVersion << "\n# command: " << run.command << "\n# seed: " << ctx.globals.seed << "\n";
        csv << "c,W_class,W_R2,W_C2\n";
        for (int i = 0; i <= 12; ++i) {
            const double c = 0.25 * i;
            const auto w = umbrella(c).witness;
            const double wc = classical_bound(w).value;
            const double wr = quantum_bound(w, Model::RealQubit, bo).value;
            const double wq = quantum_bound(w, Model::ComplexQubit, bo).value;
            csv << num(c, 17) << ',' << num(wc, 17) << ',' << num(wr, 17) << ',' << num(wq, 17) << '\n';
        }
        emit(ctx, csv.str());
        return kExitOk;
    }

    WitnessMatrix w{Eigen::MatrixXd()};
    std::optional<RunRecord> run = make_record(ctx, "bounds", config);
    if (a.c) {
        w = umbrella(*a.c).witness;
        run->config.emplace_back("c", num(*a.c, 17));
    } else if (!a.bundle.empty()) {
        const auto text = read_input(ctx, a.bundle);
        w = bundle_from_json(text).witness;
        run->artifacts.emplace_back(a.bundle, sha256_hex(text));
    } else {
        fail(ErrorCode::InvalidInput, "give --bundle, --umbrella-c or --umbrella-sweep");
    }

    std::vector<BoundResult> results;
    for (auto m : selected_models(a.model)) results.push_back(quantum_bound(w, m, bo));
    std::optional<RealGridResult> grid;
    if (a.grid) grid = real_grid_bound(w);

    if (ctx.globals.machine()) {
        json j = {{"bounds", json::array()}, {"run", json::parse(run_record_to_json(*run))}};
        for (const auto &r : results) j["bounds"].push_back(bound_json(r));
        if (grid) {
            j["real_grid"] = {{"grid_value", grid->grid_value},
                              {"upper_estimate", grid->upper_estimate},
                              {"polished_value", grid->polished_value},
                              {"resolution", grid->resolution}};
        }
        emit(ctx, j.dump(2) + "\n");
    } else {
        std::ostringstream s;
        for (const auto &r : results) s << bound_text(r);
        if (grid) {
            s << "real grid: " << num(grid->grid_value, 12) << ", refined " << num(grid->polished_value, 12)
              << ", upper estimate " << num(grid->upper_estimate, 12) << "\n";
        }
        emit(ctx, s.str());
    }
    return kExitOk;
}

// --- simulate ---------------------------------------------------------------

struct SimulateArgs {
    std::string bundle;
    std::optional<double> c;
    std::int64_t shots = 8192;
    double noise = 1.0;
    std::string circuits;
};

int cmd_simulate(Context &ctx, const SimulateArgs &a) {
    WitnessBundle b;
    std::vector<std::pair<std::string, std::string>> config{{"shots", std::to_string(a.shots)},
                                                            {"noise", num(a.noise, 17)}};
    std::vector<std::pair<std::string, std::string>> artifacts;
    if (a.c) {
        b = umbrella(*a.c);
        config.emplace_back("umbrella_c", num(*a.c, 17));
    } else if (!a.bundle.empty()) {
        const auto text = read_input(ctx, a.bundle);
        b = bundle_from_json(text);
        artifacts.emplace_back(a.bundle, sha256_hex(text));
    } else {
        fail(ErrorCode::InvalidInput, "give --bundle or --umbrella-c");
    }
    const auto spec = build_circuit_spec(b.scenario(), a.shots, a.noise);
    const auto table = sample_counts(spec, ctx.globals.seed);
    const auto est = estimate_witness(b.witness, table);

    auto run = make_record(ctx, "simulate", config, false);
    run.artifacts = artifacts;
    std::string circuits = a.circuits;
    if (circuits.empty() && !ctx.globals.out.empty() && ctx.globals.out != "-") {
        circuits = ctx.globals.out + ".circuits.json";
    }
    if (!circuits.empty()) {
        auto spec_run = run;
        spec_run.timestamp = utc_timestamp();
        const auto spec_text = circuit_spec_to_json(spec, spec_run);
        atomic_write(circuits, spec_text);
        run.artifacts.emplace_back(circuits, sha256_hex(spec_text));
    }
    emit(ctx, counts_to_csv(table, run));

    std::optional<double> sa;
    if (a.c) sa = sigma_analytic(*a.c, a.shots);
    if (ctx.globals.machine()) {
        json j = {{"value", est.value}, {"sigma", est.sigma}, {"shots", est.shots}, {"ideal_value", b.ideal_value}};
        if (sa) j["sigma_analytic"] = *sa;
        ctx.err << j.dump() << "\n";
    } else {
        ctx.err << "W_hat = " << num(est.value, 8) << " +- " << num(est.sigma, 4) << " (N = " << est.shots
                << " per circuit";
        if (sa) ctx.err << ", analytic sigma " << num(*sa, 4);
        ctx.err << ")\n";
    }
    return kExitOk;
}

// --- certify ----------------------------------------------------------------

struct CertifyArgs {
    std::string counts = "-";
    std::optional<double> c;
    std::string bundle;
    double zmin = 3.0;
    bool recompute = false;
    int starts = 0;
};

int cmd_certify(Context &ctx, const CertifyArgs &a) {
    const std::string counts_text = read_input(ctx, a.counts);
    const StatTable table = counts_from_csv(counts_text);
    std::vector<std::pair<std::string, std::string>> config{{"counts", a.counts}, {"zmin", num(a.zmin, 17)},
                                                            {"recompute", a.recompute ? "true" : "false"}};

    BoundOptions bo;
    bo.starts = a.starts;
    bo.seed = ctx.globals.seed;
    bo.keep_configurations = false;

    WitnessMatrix w{Eigen::MatrixXd()};
    Thresholds th;
    std::vector<std::pair<std::string, std::string>> artifacts{{a.counts, sha256_hex(counts_text)}};
    if (a.c) {
        config.emplace_back("c", num(*a.c, 17));
        w = umbrella(*a.c).witness;
        th = umbrella_thresholds(*a.c);
        if (a.recompute) th.real = std::max(th.real, quantum_bound(w, Model::RealQubit, bo).value);
    } else if (!a.bundle.empty()) {
        const auto text = read_file(a.bundle);
        const auto b = bundle_from_json(text);
        artifacts.emplace_back(a.bundle, sha256_hex(text));
        w = b.witness;
        th.classical = classical_bound(w).value;
        const auto *up = std::get_if<UmbrellaParams>(&b.params);
        if (up && !a.recompute) {
            th.real = real_family_value(up->c);
        } else {
            th.real = quantum_bound(w, Model::RealQubit, bo).value;
        }
        th.complex = quantum_bound(w, Model::ComplexQubit, bo).value;
    } else {
        fail(ErrorCode::InvalidInput, "give --c or --bundle for the thresholds");
    }

    const auto est = estimate_witness(w, table);
    const auto cert = certify(est, th, a.zmin);
    auto run = make_record(ctx, "certify", config);
    run.artifacts = artifacts;

    if (ctx.globals.machine()) {
        json j = {{"W_hat", cert.value},
                  {"sigma_hat", cert.sigma},
                  {"shots", est.shots},
                  {"thresholds", {{"W_class", th.classical}, {"W_R2", th.real}, {"W_C2", th.complex}}},
                  {"z_min", cert.z_min},
                  {"z_class", std::isfinite(cert.z_class) ? json(cert.z_class) : json(cert.z_class > 0 ? "inf" : "-inf")},
                  {"z_real", std::isfinite(cert.z_real) ? json(cert.z_real) : json(cert.z_real > 0 ? "inf" : "-inf")},
                  {"verdicts", {{"beats_classical", cert.beats_classical}, {"beats_real", cert.beats_real}}},
                  {"run", json::parse(run_record_to_json(run))}};
        emit(ctx, j.dump(2) + "\n");
    } else {
        std::ostringstream s;
        s << "W_hat    " << num(cert.value, 6) << " +- " << num(cert.sigma, 4) << "  (N = " << est.shots << ")\n";
        s << "W_class  " << num(th.classical, 6) << "  z = " << num(cert.z_class, 4)
          << "  beats classical: " << (cert.beats_classical ? "yes" : "no") << "\n";
        s << "W_R2     " << num(th.real, 6) << "  z = " << num(cert.z_real, 4)
          << "  beats real qubits: " << (cert.beats_real ? "yes" : "no") << "\n";
        s << "W_C2     " << num(th.complex, 6) << "\n";
        s << "verdict: "
          << (cert.beats_real        ? "complex qubit preparations certified"
              : cert.beats_classical ? "qubits certified, real qubits not excluded"
                                     : "no certification")
          << " (z_min = " << num(cert.z_min) << ")\n";
        emit(ctx, s.str());
    }
    return cert.beats_real ? kExitOk : kExitNegative;
}

// --- verify -----------------------------------------------------------------

struct VerifyArgs {
    std::string bundle;
    int trials = 64;
    bool genuine_only = false;
};

int cmd_verify(Context &ctx, const VerifyArgs &a) {
    const auto text = read_input(ctx, a.bundle);
    const auto b = bundle_from_json(text);
    SelftestOptions so;
    so.trials = a.trials;
    so.seed = ctx.globals.seed;
    so.allow_degenerate = !a.genuine_only;
    const auto rep = verify_selftest(b.witness, b.scenario(), so);
    auto run = make_record(ctx, "verify",
                           {{"bundle", a.bundle}, {"trials", std::to_string(a.trials)},
                            {"genuine_only", a.genuine_only ? "true" : "false"}});
    run.artifacts.emplace_back(a.bundle, sha256_hex(text));

    if (ctx.globals.machine()) {
        json j = {{"passed", rep.passed},
                  {"target_value", rep.target_value},
                  {"bound", rep.bound.value},
                  {"matching_starts", rep.matching_starts},
                  {"trials", a.trials},
                  {"worst_deviation", std::isfinite(rep.worst_deviation) ? json(rep.worst_deviation) : json("inf")},
                  {"notes", rep.notes},
                  {"run", json::parse(run_record_to_json(run))}};
        emit(ctx, j.dump(2) + "\n");
    } else {
        std::ostringstream s;
        s << "target value     " << num(rep.target_value, 12) << "\n";
        s << "bound            " << num(rep.bound.value, 12) << "\n";
        s << "optimal starts   " << rep.matching_starts << " / " << a.trials << "\n";
        s << "worst deviation  " << num(rep.worst_deviation, 3) << "\n";
        for (const auto &n : rep.notes) s << "note: " << n << "\n";
        s << (rep.passed ? "self-test verified" : "self-test NOT verified") << "\n";
        emit(ctx, s.str());
    }
    return rep.passed ? kExitOk : kExitNegative;
}

} // namespace

int run(const std::vector<std::string> &args, std::istream &in, std::ostream &out, std::ostream &err) {
    Context ctx{Globals{}, in, out, err, args};
    CLI::App app{"Self-testing witnesses for qubit prepare-and-measure scenarios", "pmst"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--seed", ctx.globals.seed, "Seed for every random draw")->capture_default_str();
    app.add_option("--out", ctx.globals.out, "Write the primary result here instead of standard output");
    app.add_option("--format", ctx.globals.format, "Report format")
        ->check(CLI::IsMember({"text", "machine"}))
        ->capture_default_str();

    ConstructArgs ca;
    auto *construct = app.add_subcommand("construct", "Build a witness and its ideal configuration");
    construct->add_option("--method", ca.method, "4x3, general, 4x6 or umbrella")
        ->required()
        ->check(CLI::IsMember({"4x3", "general", "4x6", "umbrella"}));
    construct->add_option("--states", ca.states, "JSON input with states and construction parameters ('-' for stdin)");
    construct->add_option("--c", ca.c, "Umbrella parameter in [0, 3]")->capture_default_str();
    construct->add_option("--k", ca.k, "POVM penalty weight")->capture_default_str();
    construct->add_flag("--allow-degenerate", ca.allow_degenerate, "Keep w even if fixed-outcome settings beat it");
    construct->add_flag("--no-double", ca.no_double, "Fail instead of doubling the rows");
    construct->add_option("--check-starts", ca.check_starts, "Starts for the fixed-outcome check (0 disables)")
        ->capture_default_str();

    BoundsArgs ba;
    auto *bounds = app.add_subcommand("bounds", "Classical, real-qubit and complex-qubit maxima");
    bounds->add_option("--bundle", ba.bundle, "Witness bundle ('-' for stdin)");
    bounds->add_option("--umbrella-c", ba.c, "Use the umbrella witness at this c");
    bounds->add_flag("--umbrella-sweep", ba.sweep, "CSV of all three bounds over c = 0, 0.25, ..., 3");
    bounds->add_option("--model", ba.model, "classical, real_qubit, complex_qubit or all")->capture_default_str();
    bounds->add_option("--starts", ba.starts, "Random starts (0: model default)")->capture_default_str();
    bounds->add_flag("--genuine-only", ba.genuine_only, "Exclude fixed-outcome settings");
    bounds->add_flag("--grid", ba.grid, "Add the dense coplanar grid check (three settings at most)");

    SimulateArgs sa;
    auto *simulate = app.add_subcommand("simulate", "Sample finite-shot counts from the ideal circuits");
    simulate->add_option("--bundle", sa.bundle, "Witness bundle ('-' for stdin)");
    simulate->add_option("--umbrella-c", sa.c, "Use the umbrella configuration at this c");
    simulate->add_option("--shots", sa.shots, "Shots per circuit")->check(CLI::PositiveNumber)->capture_default_str();
    simulate->add_option("--noise", sa.noise, "Visibility eta in [0, 1]")->check(CLI::Range(0.0, 1.0))->capture_default_str();
    simulate->add_option("--circuits", sa.circuits, "Circuit spec path (default: <out>.circuits.json when --out is set)");

    CertifyArgs cfa;
    auto *cert = app.add_subcommand("certify", "Compare measured counts with classical and real-qubit maxima");
    cert->add_option("counts", cfa.counts, "Counts CSV ('-' for stdin)")->capture_default_str();
    cert->add_option("--c", cfa.c, "Umbrella parameter of the measured witness");
    cert->add_option("--bundle", cfa.bundle, "Witness bundle the counts belong to");
    cert->add_option("--zmin", cfa.zmin, "Required z-score")->capture_default_str();
    cert->add_flag("--recompute", cfa.recompute, "Rerun the real-qubit optimizer for the threshold");
    cert->add_option("--starts", cfa.starts, "Random starts when optimizing (0: model default)");

    VerifyArgs va;
    auto *verify = app.add_subcommand("verify", "Check that the optimum is unique up to rotations");
    verify->add_option("--bundle", va.bundle, "Witness bundle ('-' for stdin)")->required();
    verify->add_option("--trials", va.trials, "Random starts")->check(CLI::PositiveNumber)->capture_default_str();
    verify->add_flag("--genuine-only", va.genuine_only, "Exclude fixed-outcome settings from the bound");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (*construct) return cmd_construct(ctx, ca);
        if (*bounds) return cmd_bounds(ctx, ba);
        if (*simulate) return cmd_simulate(ctx, sa);
        if (*cert) return cmd_certify(ctx, cfa);
        if (*verify) return cmd_verify(ctx, va);
    } catch (const Error &e) {
        err << "error: " << e.name() << ": " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}

} // namespace pmst::cli
