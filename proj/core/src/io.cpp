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

#include "pmst/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pmst/error.hpp"

namespace pmst {

namespace {

using nlohmann::json;

json vec_json(const Vec3 &v) { return json::array({v(0), v(1), v(2)}); }

json vecs_json(std::span<const Vec3> vs) {
    json out = json::array();
    for (const auto &v : vs) out.push_back(vec_json(v));
    return out;
}

json matrix_json(const Eigen::MatrixXd &m) {
    json out = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        out.push_back(row);
    }
    return out;
}

template <typename Range> json list_json(const Range &r) {
    json out = json::array();
    for (const auto &x : r) out.push_back(x);
    return out;
}

Vec3 vec_from(const json &j) {
    if (!j.is_array() || j.size() != 3) fail(ErrorCode::MalformedFile, "expected a Bloch triple");
    return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()};
}

std::vector<Vec3> vecs_from(const json &j) {
    if (!j.is_array()) fail(ErrorCode::MalformedFile, "expected a list of Bloch triples");
    std::vector<Vec3> out;
    for (const auto &e : j) out.push_back(vec_from(e));
    return out;
}

Eigen::MatrixXd matrix_from(const json &j) {
    if (!j.is_array() || j.empty()) fail(ErrorCode::MalformedFile, "expected a non-empty matrix");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j.at(0).size());
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const auto &row = j.at(static_cast<std::size_t>(i));
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
            fail(ErrorCode::MalformedFile, "matrix rows must have equal length");
        }
        for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = row.at(static_cast<std::size_t>(k)).get<double>();
    }
    return m;
}

std::vector<double> doubles_from(const json &j) {
    if (!j.is_array()) fail(ErrorCode::MalformedFile, "expected a list of numbers");
    return j.get<std::vector<double>>();
}

json run_json(const RunRecord &run) {
    json config = json::object();
    for (const auto &[k, v] : run.config) config[k] = v;
    json artifacts = json::object();
    for (const auto &[k, v] : run.artifacts) artifacts[k] = v;
    json out = {{"tool", run.tool},   {"version", run.version}, {"command", run.command}, {"config", config},
                {"seeds", run.seeds}, {"artifacts", artifacts}};
    if (!run.timestamp.empty()) out["timestamp"] = run.timestamp;
    return out;
}

json params_json(const ConstructionParams &params) {
    return std::visit(
        [](const auto &p) -> json {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return nullptr;
            } else if constexpr (std::is_same_v<T, FourByThreeParams>) {
                return {{"p", list_json(p.p)}, {"q", list_json(p.q)}};
            } else if constexpr (std::is_same_v<T, UmbrellaParams>) {
                return {{"c", p.c}, {"p", list_json(p.pq.p)}, {"q", list_json(p.pq.q)}};
            } else if constexpr (std::is_same_v<T, GeneralParams>) {
                return {{"r", p.r},
                        {"mu", matrix_json(p.mu)},
                        {"operator", matrix_json(p.operator_matrix)},
                        {"eigenvalues", list_json(std::vector<double>(p.eigenvalues.begin(), p.eigenvalues.end()))},
                        {"hessian_rank", p.hessian_rank}};
            } else {
                json pairs = json::array();
                for (const auto &[i, j] : p.pairs) pairs.push_back(json::array({i + 1, j + 1}));
                return {{"F", matrix_json(p.F)},
                        {"tau", p.tau},
                        {"pairs", pairs},
                        {"coefficients", p.coefficients},
                        {"row_signs", p.row_signs},
                        {"equilibrium_residual", p.equilibrium_residual}};
            }
        },
        params);
}

ConstructionParams params_from(Construction c, const json &j) {
    if (j.is_null()) return std::monostate{};
    auto array4 = [](const json &a) {
        const auto v = doubles_from(a);
        if (v.size() != 4) fail(ErrorCode::MalformedFile, "p must have four entries");
        return std::array<double, 4>{v[0], v[1], v[2], v[3]};
    };
    auto array3 = [](const json &a) {
        const auto v = doubles_from(a);
        if (v.size() != 3) fail(ErrorCode::MalformedFile, "q must have three entries");
        return std::array<double, 3>{v[0], v[1], v[2]};
    };
    switch (c) {
    case Construction::FourByThree: return FourByThreeParams{array4(j.at("p")), array3(j.at("q"))};
    case Construction::Umbrella:
        return UmbrellaParams{j.at("c").get<double>(), FourByThreeParams{array4(j.at("p")), array3(j.at("q"))}};
    case Construction::General: {
        GeneralParams p;
        p.r = doubles_from(j.at("r"));
        p.mu = matrix_from(j.at("mu"));
        const auto op = matrix_from(j.at("operator"));
        if (op.rows() != 3 || op.cols() != 3) fail(ErrorCode::MalformedFile, "operator must be 3x3");
        p.operator_matrix = op;
        const auto ev = doubles_from(j.at("eigenvalues"));
        if (ev.size() != 3) fail(ErrorCode::MalformedFile, "three eigenvalues expected");
        p.eigenvalues = Eigen::Vector3d(ev[0], ev[1], ev[2]);
        p.hessian_rank = j.at("hessian_rank").get<int>();
        return p;
    }
    case Construction::FourBySix: {
        PairwiseParams p;
        p.F = matrix_from(j.at("F"));
        p.tau = doubles_from(j.at("tau"));
        for (const auto &pair : j.at("pairs")) {
            p.pairs.emplace_back(pair.at(0).get<int>() - 1, pair.at(1).get<int>() - 1);
        }
        p.coefficients = doubles_from(j.at("coefficients"));
        p.row_signs = j.at("row_signs").get<std::vector<int>>();
        p.equilibrium_residual = j.at("equilibrium_residual").get<double>();
        return p;
    }
    }
    return std::monostate{};
}

json povm_json(const Povm &povm) {
    return {{"weights", povm.weights()}, {"vectors", vecs_json(povm.vectors())}};
}

Povm povm_from(const json &j) { return Povm(doubles_from(j.at("weights")), vecs_from(j.at("vectors"))); }

template <typename F> auto guarded(F &&f) -> decltype(f()) {
    try {
        return f();
    } catch (const json::exception &e) {
        fail(ErrorCode::MalformedFile, e.what());
    }
}

std::string scalar_text(const std::string &s) {
    std::string out;
    for (char ch : s) out += (ch == '\n' || ch == '\r') ? ' ' : ch;
    return out;
}

} // namespace

std::string run_record_to_json(const RunRecord &run) { return run_json(run).dump(2); }

std::string bundle_to_json(const WitnessBundle &b, const std::optional<RunRecord> &run) {
    json j;
    j["construction"] = std::string(construction_name(b.construction));
    j["w"] = matrix_json(b.witness.coefficients());
    j["k"] = b.witness.penalty() ? json(*b.witness.penalty()) : json(nullptr);
    j["target_povm"] = b.witness.target_povm() ? povm_json(*b.witness.target_povm()) : json(nullptr);
    j["states"] = vecs_json(b.states);
    j["measurements"] = vecs_json(b.measurements);
    j["ideal_value"] = b.ideal_value;
    j["doubled"] = b.doubled;
    j["params"] = params_json(b.params);
    j["warnings"] = b.warnings;
    if (run) j["run"] = run_json(*run);
    return j.dump(2) + "\n";
}

WitnessBundle bundle_from_json(std::string_view text) {
    return guarded([&] {
        const json j = json::parse(text);
        if (!j.is_object()) fail(ErrorCode::MalformedFile, "bundle must be a JSON object");
        WitnessBundle b;
        try {
            b.construction = parse_construction(j.at("construction").get<std::string>());
        } catch (const Error &e) {
            fail(ErrorCode::MalformedFile, e.what());
        }
        Eigen::MatrixXd w = matrix_from(j.at("w"));
        const bool has_k = j.contains("k") && !j.at("k").is_null();
        const bool has_povm = j.contains("target_povm") && !j.at("target_povm").is_null();
        if (has_k != has_povm) fail(ErrorCode::MalformedFile, "k and target_povm must be given together");
        b.witness = has_k ? WitnessMatrix(std::move(w), povm_from(j.at("target_povm")), j.at("k").get<double>())
                          : WitnessMatrix(std::move(w));
        b.states = vecs_from(j.at("states"));
        b.measurements = vecs_from(j.at("measurements"));
        if (static_cast<Eigen::Index>(b.states.size()) != b.witness.num_states() ||
            static_cast<Eigen::Index>(b.measurements.size()) != b.witness.num_measurements()) {
            fail(ErrorCode::MalformedFile, "states and measurements must match the shape of w");
        }
        b.ideal_value = j.value("ideal_value", 0.0);
        b.doubled = j.value("doubled", false);
        b.params = params_from(b.construction, j.value("params", json(nullptr)));
        if (j.contains("warnings")) b.warnings = j.at("warnings").get<std::vector<std::string>>();
        return b;
    });
}

std::string circuit_spec_to_json(const CircuitSpec &spec, const std::optional<RunRecord> &run) {
    json j;
    j["num_states"] = spec.num_states;
    j["num_measurements"] = spec.num_measurements;
    j["shots"] = spec.shots;
    j["eta"] = spec.eta;
    json circuits = json::array();
    for (const auto &e : spec.entries) {
        circuits.push_back({{"x", e.x + 1},
                            {"y", e.y + 1},
                            {"alpha", json::array({e.prep.alpha.real(), e.prep.alpha.imag()})},
                            {"beta", json::array({e.prep.beta.real(), e.prep.beta.imag()})},
                            {"theta", e.meas.theta},
                            {"phi", e.meas.phi},
                            {"shots", e.shots}});
    }
    j["circuits"] = circuits;
    if (run) j["run"] = run_json(*run);
    return j.dump(2) + "\n";
}

CircuitSpec circuit_spec_from_json(std::string_view text) {
    return guarded([&] {
        const json j = json::parse(text);
        CircuitSpec spec;
        spec.num_states = j.at("num_states").get<int>();
        spec.num_measurements = j.at("num_measurements").get<int>();
        spec.shots = j.at("shots").get<std::int64_t>();
        spec.eta = j.value("eta", 1.0);
        if (spec.num_states < 1 || spec.num_measurements < 1 || spec.shots < 1) {
            fail(ErrorCode::MalformedFile, "circuit spec dimensions and shots must be positive");
        }
        spec.entries.resize(static_cast<std::size_t>(spec.num_states * spec.num_measurements));
        std::vector<bool> seen(spec.entries.size(), false);
        for (const auto &c : j.at("circuits")) {
            CircuitEntry e;
            e.x = c.at("x").get<int>() - 1;
            e.y = c.at("y").get<int>() - 1;
            if (e.x < 0 || e.x >= spec.num_states || e.y < 0 || e.y >= spec.num_measurements) {
                fail(ErrorCode::MalformedFile, "circuit index out of range");
            }
            e.prep.alpha = Complex(c.at("alpha").at(0).get<double>(), c.at("alpha").at(1).get<double>());
            e.prep.beta = Complex(c.at("beta").at(0).get<double>(), c.at("beta").at(1).get<double>());
            if (std::abs(std::norm(e.prep.alpha) + std::norm(e.prep.beta) - 1.0) > 1e-12) {
                fail(ErrorCode::MalformedFile, "preparation amplitudes are not normalized");
            }
            e.meas.theta = c.at("theta").get<double>();
            e.meas.phi = c.at("phi").get<double>();
            e.shots = c.at("shots").get<std::int64_t>();
            if (e.shots != spec.shots) fail(ErrorCode::MalformedFile, "all circuits must use the same shot count");
            const auto idx = static_cast<std::size_t>(e.x * spec.num_measurements + e.y);
            if (seen[idx]) fail(ErrorCode::MalformedFile, "duplicate circuit");
            seen[idx] = true;
            spec.entries[idx] = e;
        }
        for (bool s : seen) {
            if (!s) fail(ErrorCode::MalformedFile, "missing circuit");
        }
        return spec;
    });
}

std::string counts_to_csv(const StatTable &table, const std::optional<RunRecord> &run) {
    std::ostringstream out;
    if (run) {
        out << "# tool: " << scalar_text(run->tool) << ' ' << scalar_text(run->version) << '\n';
        out << "# command: " << scalar_text(run->command) << '\n';
        for (const auto &[k, v] : run->config) out << "# config." << scalar_text(k) << ": " << scalar_text(v) << '\n';
        for (const auto s : run->seeds) out << "# seed: " << s << '\n';
        for (const auto &[k, v] : run->artifacts) out << "# sha256." << scalar_text(k) << ": " << v << '\n';
    }
    out << "x,y,b,count\n";
    for (int x = 0; x < table.num_states(); ++x) {
        for (int y = 0; y < table.num_measurements(); ++y) {
            for (int b = 0; b < 2; ++b) out << x + 1 << ',' << y + 1 << ',' << b << ',' << table.count(x, y, b) << '\n';
        }
    }
    return out.str();
}

StatTable counts_from_csv(std::string_view text) {
    struct Row {
        int x, y, b;
        std::int64_t n;
    };
    std::vector<Row> rows;
    bool header = false;
    int line_no = 0;
    std::size_t pos = 0;
    auto bad = [&](const std::string &why) {
        fail(ErrorCode::MalformedFile, "counts line " + std::to_string(line_no) + ": " + why);
    };
    while (pos <= text.size()) {
        const auto end = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty() || line.front() == '#') {
            if (end == text.size()) break;
            continue;
        }
        if (!header) {
            if (line != "x,y,b,count") bad("expected header x,y,b,count");
            header = true;
            continue;
        }
        std::array<std::int64_t, 4> f{};
        std::size_t start = 0;
        for (int k = 0; k < 4; ++k) {
            const auto comma = k < 3 ? line.find(',', start) : line.size();
            if (comma == std::string_view::npos) bad("expected four fields");
            const auto field = line.substr(start, comma - start);
            const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), f[static_cast<std::size_t>(k)]);
            if (ec != std::errc() || ptr != field.data() + field.size()) bad("fields must be integers");
            start = comma + 1;
        }
        if (f[0] < 1 || f[1] < 1 || f[2] < 0 || f[2] > 1 || f[3] < 0) bad("field out of range");
        rows.push_back({static_cast<int>(f[0]) - 1, static_cast<int>(f[1]) - 1, static_cast<int>(f[2]), f[3]});
        if (end == text.size()) break;
    }
    if (!header) fail(ErrorCode::MalformedFile, "counts file has no header");
    if (rows.empty()) fail(ErrorCode::MalformedFile, "counts file has no rows");
    int nx = 0, ny = 0;
    for (const auto &r : rows) {
        nx = std::max(nx, r.x + 1);
        ny = std::max(ny, r.y + 1);
    }
    StatTable table(nx, ny);
    std::vector<bool> seen(static_cast<std::size_t>(nx * ny * 2), false);
    for (const auto &r : rows) {
        const auto idx = static_cast<std::size_t>((r.x * ny + r.y) * 2 + r.b);
        if (seen[idx]) {
            fail(ErrorCode::MalformedFile, "duplicate row for x=" + std::to_string(r.x + 1) +
                                               " y=" + std::to_string(r.y + 1) + " b=" + std::to_string(r.b));
        }
        seen[idx] = true;
        table.set_count(r.x, r.y, r.b, r.n);
    }
    for (std::size_t i = 0; i < seen.size(); ++i) {
        if (!seen[i]) {
            const auto cell = i / 2;
            fail(ErrorCode::MalformedFile, "missing row for x=" + std::to_string(cell / static_cast<std::size_t>(ny) + 1) +
                                               " y=" + std::to_string(cell % static_cast<std::size_t>(ny) + 1) +
                                               " b=" + std::to_string(i % 2));
        }
    }
    try {
        table.shots();
    } catch (const Error &e) {
        fail(ErrorCode::MalformedFile, e.what());
    }
    return table;
}

std::string read_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::InvalidInput, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void atomic_write(const std::filesystem::path &path, std::string_view content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail(ErrorCode::InvalidInput, "cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) fail(ErrorCode::InvalidInput, "short write to " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        fail(ErrorCode::InvalidInput, "cannot replace " + path.string() + ": " + ec.message());
    }
}

} // namespace pmst
