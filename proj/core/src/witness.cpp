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

#include "pmst/witness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pmst/error.hpp"

namespace pmst {

namespace {

constexpr std::array<std::array<int, 3>, 4> kSigns{{{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}}};

void require_units(std::span<const Vec3> m) {
    for (const auto &v : m) require_unit(v, "state Bloch vector");
}

std::optional<Povm> target_from_states(std::span<const Vec3> m) {
    if (m.size() != 3 && m.size() != 4) return std::nullopt;
    std::vector<Vec3> n;
    for (const auto &v : m) n.push_back(-v);
    try {
        return povm_from_bloch(n);
    } catch (const Error &) {
        return std::nullopt;
    }
}

WitnessMatrix make_witness(Eigen::MatrixXd w, std::span<const Vec3> m, bool attach, double penalty) {
    if (!(penalty > 0.0)) fail(ErrorCode::InvalidK, "POVM penalty weight k must be positive");
    if (attach) {
        if (auto povm = target_from_states(m)) return WitnessMatrix(std::move(w), std::move(*povm), penalty);
    }
    return WitnessMatrix(std::move(w));
}

// Null vector of the 3x4 stack, normalized, with sum >= 0.
std::array<double, 4> null_combination(std::span<const Vec3> m) {
    Eigen::Matrix<double, 3, 4> a;
    for (int x = 0; x < 4; ++x) a.col(x) = m[static_cast<std::size_t>(x)];
    Eigen::JacobiSVD<Eigen::Matrix<double, 3, 4>> svd(a, Eigen::ComputeFullV);
    Eigen::Vector4d p = svd.matrixV().col(3);
    p.normalize();
    double total = p.sum();
    if (std::abs(total) <= 1e-12) {
        for (int x = 0; x < 4; ++x) {
            if (std::abs(p(x)) > 1e-12) {
                total = p(x);
                break;
            }
        }
    }
    if (total < 0.0) p = -p;
    return {p(0), p(1), p(2), p(3)};
}

void check_columns(WitnessBundle &b, bool reject) {
    const auto report = degenerate_check(b.witness.coefficients(), b.states);
    for (std::size_t y = 0; y < report.size(); ++y) {
        if (report[y].genuine_preferred()) continue;
        const std::string msg = "degenerate setting beats column " + std::to_string(y + 1) +
                                " by " + std::to_string(-report[y].margin) + "; double the rows";
        if (reject) fail(ErrorCode::DegenerateAdvantage, msg);
        b.warnings.push_back("DegenerateAdvantage: " + msg);
    }
}

// Orthonormal basis of an eigenspace with a deterministic orientation.
std::vector<Vec3> canonical_basis(const Eigen::Matrix3Xd &space) {
    std::vector<Vec3> out;
    const auto dim = space.cols();
    if (dim == 1) {
        out.emplace_back(space.col(0).normalized());
    } else {
        const Eigen::Matrix3d proj = space * space.transpose();
        for (int k = 0; k < 3 && static_cast<Eigen::Index>(out.size()) < dim; ++k) {
            Vec3 v = proj.col(k);
            for (const auto &b : out) v -= b.dot(v) * b;
            if (v.norm() > 1e-6) out.emplace_back(v.normalized());
        }
    }
    for (auto &v : out) {
        for (int i = 0; i < 3; ++i) {
            if (std::abs(v(i)) > 1e-9) {
                if (v(i) < 0.0) v = -v;
                break;
            }
        }
    }
    return out;
}

} // namespace

std::string_view construction_name(Construction c) noexcept {
    switch (c) {
    case Construction::FourByThree: return "4x3";
    case Construction::General: return "general";
    case Construction::FourBySix: return "4x6";
    case Construction::Umbrella: return "umbrella";
    }
    return "unknown";
}

Construction parse_construction(std::string_view name) {
    for (auto c : {Construction::FourByThree, Construction::General, Construction::FourBySix,
                   Construction::Umbrella}) {
        if (construction_name(c) == name) return c;
    }
    fail(ErrorCode::InvalidInput, "unknown construction '" + std::string(name) + "'");
}

PMScenario WitnessBundle::scenario() const {
    auto sc = PMScenario::projective(states, measurements);
    sc.target = witness.target_povm();
    return sc;
}

Eigen::MatrixXd four_by_three_matrix(const FourByThreeParams &params) {
    Eigen::MatrixXd w(4, 3);
    for (int x = 0; x < 4; ++x) {
        for (int y = 0; y < 3; ++y) {
            w(x, y) = kSigns[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] *
                      params.p[static_cast<std::size_t>(x)] * params.q[static_cast<std::size_t>(y)];
        }
    }
    return w;
}

GramMatrix optimal_gram_4x3(const FourByThreeParams &params) {
    const auto &p = params.p;
    const auto &q = params.q;
    for (double qy : q) {
        if (std::abs(qy) <= 1e-12) fail(ErrorCode::IllegitimateGram, "q_y vanishes; the optimal Gram matrix is undefined");
    }
    const double p1 = p[0] * p[0];
    Eigen::MatrixXd g = Eigen::MatrixXd::Identity(3, 3);
    g(0, 1) = g(1, 0) = (p1 + p[3] * p[3] - 0.5) / (q[0] * q[1]);
    g(0, 2) = g(2, 0) = (p1 + p[2] * p[2] - 0.5) / (q[0] * q[2]);
    g(1, 2) = g(2, 1) = (p1 + p[1] * p[1] - 0.5) / (q[1] * q[2]);
    return GramMatrix(std::move(g));
}

WitnessBundle build_4x3(std::span<const Vec3> m, const FourByThreeOptions &options) {
    if (m.size() != 4) fail(ErrorCode::DimensionMismatch, "the 4x3 construction needs four states");
    require_units(m);

    FourByThreeParams params;
    if (options.p) {
        Eigen::Vector4d p(options.p->data());
        if (!(p.norm() > 0.0)) fail(ErrorCode::InvalidInput, "explicit p must be nonzero");
        p.normalize();
        Vec3 sum = Vec3::Zero();
        for (int x = 0; x < 4; ++x) sum += p(x) * m[static_cast<std::size_t>(x)];
        if (sum.norm() > 1e-9) fail(ErrorCode::InvalidInput, "explicit p does not satisfy sum_x p_x m_x = 0");
        for (int x = 0; x < 4; ++x) params.p[static_cast<std::size_t>(x)] = p(x);
    } else {
        Eigen::MatrixXd stack = as_columns(m);
        if (numerical_rank(stack) < 3) {
            fail(ErrorCode::CoplanarStates, "states do not span three dimensions; supply p explicitly");
        }
        params.p = null_combination(m);
    }
    const auto &p = params.p;
    params.q = {(p[0] * m[0] + p[1] * m[1]).norm(), (p[0] * m[0] + p[2] * m[2]).norm(),
                (p[0] * m[0] + p[3] * m[3]).norm()};
    const double qsq = params.q[0] * params.q[0] + params.q[1] * params.q[1] + params.q[2] * params.q[2];
    if (std::abs(qsq - 1.0) > 1e-9) {
        fail(ErrorCode::InvalidInput, "q normalization failed (sum q^2 = " + std::to_string(qsq) + ")");
    }

    const GramMatrix gram = optimal_gram_4x3(params);
    if (!gram.is_legitimate()) fail(ErrorCode::IllegitimateGram, "optimal Gram matrix is not positive semidefinite");

    Eigen::MatrixXd w = four_by_three_matrix(params);
    const auto response = best_measurements(w, m);
    for (bool f : response.flagged) {
        if (f) fail(ErrorCode::IllegitimateGram, "an optimal measurement direction is undefined");
    }

    WitnessBundle b;
    b.construction = Construction::FourByThree;
    b.witness = make_witness(std::move(w), m, options.attach_target, options.penalty);
    b.states.assign(m.begin(), m.end());
    b.measurements = response.directions;
    b.ideal_value = 2.0;
    b.params = params;
    for (int x = 0; x < 4; ++x) {
        if (std::abs(p[static_cast<std::size_t>(x)]) <= 1e-12) {
            b.warnings.push_back("row " + std::to_string(x + 1) + " of w is zero; state " + std::to_string(x + 1) +
                                 " is not tested");
        }
    }
    check_columns(b, options.reject_degenerate);
    return b;
}

std::pair<WitnessMatrix, std::vector<Vec3>> double_rows(const WitnessMatrix &w, std::span<const Vec3> m) {
    if (static_cast<Eigen::Index>(m.size()) != w.num_states()) {
        fail(ErrorCode::DimensionMismatch, "state count does not match witness rows");
    }
    const auto &a = w.coefficients();
    Eigen::MatrixXd out(2 * a.rows(), a.cols());
    out.topRows(a.rows()) = a;
    out.bottomRows(a.rows()) = -a;
    std::vector<Vec3> states(m.begin(), m.end());
    for (const auto &v : m) states.emplace_back(-v);
    if (w.target_povm()) return {WitnessMatrix(std::move(out), *w.target_povm(), *w.penalty()), std::move(states)};
    return {WitnessMatrix(std::move(out)), std::move(states)};
}

WitnessBundle double_rows(const WitnessBundle &bundle) {
    auto [w, states] = double_rows(bundle.witness, bundle.states);
    WitnessBundle b = bundle;
    b.witness = std::move(w);
    b.states = std::move(states);
    b.ideal_value = 2.0 * bundle.ideal_value;
    b.doubled = true;
    std::erase_if(b.warnings, [](const std::string &s) { return s.rfind("DegenerateAdvantage", 0) == 0; });
    return b;
}

WitnessBundle build_general(std::span<const Vec3> m, std::span<const double> r, const GeneralOptions &options) {
    if (m.empty()) fail(ErrorCode::InvalidInput, "at least one state is required");
    if (r.size() != m.size()) fail(ErrorCode::DimensionMismatch, "r must have one entry per state");
    require_units(m);
    for (double rx : r) {
        if (!(rx > 0.0)) fail(ErrorCode::InvalidInput, "r_x must be positive");
    }

    Eigen::Matrix3d op = Eigen::Matrix3d::Zero();
    for (std::size_t x = 0; x < m.size(); ++x) op += r[x] * m[x] * m[x].transpose();

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(op);
    const Eigen::Vector3d ascending = eig.eigenvalues();
    const Eigen::Matrix3d vecs = eig.eigenvectors();
    const double scale = std::max(ascending(2), 1e-300);
    const int mv = numerical_rank(as_columns(m));

    // Group the retained (largest) eigenvalues into eigenspaces, descending.
    std::vector<Vec3> v;
    int idx = 2;
    while (idx >= 3 - mv) {
        int lo = idx;
        while (lo - 1 >= 3 - mv && std::abs(ascending(lo - 1) - ascending(idx)) <= 1e-9 * scale) --lo;
        Eigen::Matrix3Xd space(3, idx - lo + 1);
        for (int k = idx; k >= lo; --k) space.col(idx - k) = vecs.col(k);
        for (auto &b : canonical_basis(space)) v.push_back(b);
        idx = lo - 1;
    }

    const auto mm = static_cast<Eigen::Index>(m.size());
    const auto nv = static_cast<Eigen::Index>(v.size());
    GeneralParams params;
    params.r.assign(r.begin(), r.end());
    params.mu.resize(mm, nv);
    Eigen::MatrixXd w(mm, nv);
    for (Eigen::Index x = 0; x < mm; ++x) {
        for (Eigen::Index y = 0; y < nv; ++y) {
            params.mu(x, y) = m[static_cast<std::size_t>(x)].dot(v[static_cast<std::size_t>(y)]);
            w(x, y) = r[static_cast<std::size_t>(x)] * params.mu(x, y);
        }
    }
    params.operator_matrix = op;
    params.eigenvalues = ascending.reverse();

    const double rsum = std::accumulate(r.begin(), r.end(), 0.0);
    for (Eigen::Index y1 = 0; y1 < nv; ++y1) {
        for (Eigen::Index y2 = y1 + 1; y2 < nv; ++y2) {
            double s = 0.0;
            for (Eigen::Index x = 0; x < mm; ++x) s += w(x, y1) * params.mu(x, y2);
            if (std::abs(s) > 1e-10 * std::max(1.0, rsum)) {
                fail(ErrorCode::InvalidInput, "eigenframe orthogonality check failed");
            }
        }
    }

    const Eigen::Index npairs = nv * (nv - 1) / 2;
    WitnessBundle b;
    if (npairs > 0) {
        Eigen::MatrixXd t(mm, npairs);
        Eigen::Index alpha = 0;
        for (Eigen::Index y1 = 0; y1 < nv; ++y1) {
            for (Eigen::Index y2 = y1 + 1; y2 < nv; ++y2, ++alpha) {
                for (Eigen::Index x = 0; x < mm; ++x) {
                    const double rx = r[static_cast<std::size_t>(x)];
                    t(x, alpha) = rx * rx * params.mu(x, y1) * params.mu(x, y2);
                }
            }
        }
        params.hessian_rank = numerical_rank(t);
        if (mm < npairs + 1) {
            b.warnings.push_back("fewer states than M_v(M_v-1)/2 + 1; the Hessian cannot have full rank");
        }
        if (params.hessian_rank != npairs) {
            fail(ErrorCode::RankDeficient, "Hessian rank " + std::to_string(params.hessian_rank) + " < " +
                                               std::to_string(npairs) +
                                               "; choose different r_x or add a state");
        }
    }

    b.construction = Construction::General;
    b.witness = make_witness(std::move(w), m, options.attach_target, options.penalty);
    b.states.assign(m.begin(), m.end());
    b.measurements = std::move(v);
    b.ideal_value = rsum;
    b.params = std::move(params);
    check_columns(b, options.reject_degenerate);
    return b;
}

Vec3 augment_state(std::span<const Vec3> m, std::span<const double> r_prime) {
    if (r_prime.size() != m.size()) fail(ErrorCode::DimensionMismatch, "r' must have one entry per state");
    Vec3 sum = Vec3::Zero();
    for (std::size_t x = 0; x < m.size(); ++x) {
        if (!(r_prime[x] > 0.0)) fail(ErrorCode::InvalidInput, "r'_x must be positive");
        sum += r_prime[x] * m[x];
    }
    if (sum.norm() <= 1e-10) fail(ErrorCode::ZeroSum, "sum_x r'_x m_x vanishes; no extra state is needed");
    return -sum.normalized();
}

double pairwise_equilibrium_residual(const Eigen::MatrixXd &F, std::span<const Vec3> m) {
    const auto n = static_cast<Eigen::Index>(m.size());
    if (F.rows() != n || F.cols() != n) fail(ErrorCode::DimensionMismatch, "F must be square with one row per state");
    double worst = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const Vec3 &mi = m[static_cast<std::size_t>(i)];
        Vec3 force = Vec3::Zero();
        double tau = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j == i || F(i, j) == 0.0) continue;
            const Vec3 d = mi - m[static_cast<std::size_t>(j)];
            const double len = d.norm();
            if (len <= 1e-12) continue;
            force += F(i, j) * d / len;
            tau += F(i, j) * (1.0 - mi.dot(m[static_cast<std::size_t>(j)])) / len;
        }
        worst = std::max(worst, (force - tau * mi).norm());
    }
    return worst;
}

WitnessBundle build_pairwise(std::span<const Vec3> m, std::span<const double> coefficients, bool allow_signed) {
    const std::size_t n = m.size();
    if (n < 2) fail(ErrorCode::InvalidInput, "at least two states are required");
    if (coefficients.size() != n) fail(ErrorCode::DimensionMismatch, "one coefficient per state is required");
    require_units(m);

    PairwiseParams params;
    params.coefficients.assign(coefficients.begin(), coefficients.end());
    std::vector<Vec3> mp(n);
    std::vector<double> lam(n);
    Vec3 sum = Vec3::Zero();
    for (std::size_t i = 0; i < n; ++i) {
        const double c = coefficients[i];
        if (c == 0.0) fail(ErrorCode::NoValidWeights, "coefficients must be nonzero");
        if (c < 0.0 && !allow_signed) fail(ErrorCode::NoValidWeights, "negative coefficient without sign flipping");
        const int s = c > 0.0 ? 1 : -1;
        params.row_signs.push_back(s);
        mp[i] = s * m[i];
        lam[i] = std::abs(c);
        sum += c * m[i];
    }
    if (sum.norm() > 1e-9) fail(ErrorCode::InvalidInput, "coefficients do not combine the states to zero");

    WitnessBundle b;
    const auto ni = static_cast<Eigen::Index>(n);
    params.F = Eigen::MatrixXd::Zero(ni, ni);
    std::vector<Vec3> v;
    double ideal = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const Vec3 d = mp[i] - mp[j];
            const double len = d.norm();
            if (len <= 1e-12) {
                b.warnings.push_back("CoincidentVectors: states " + std::to_string(i + 1) + " and " +
                                     std::to_string(j + 1) + " coincide; pair setting dropped");
                continue;
            }
            const double f = lam[i] * lam[j] * len;
            params.F(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = f;
            params.F(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = f;
            params.pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
            v.push_back(d / len);
            ideal += f * len;
        }
    }
    if (v.empty()) fail(ErrorCode::CoincidentVectors, "all states coincide");

    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(ni, static_cast<Eigen::Index>(v.size()));
    for (std::size_t a = 0; a < params.pairs.size(); ++a) {
        const auto [i, j] = params.pairs[a];
        const double f = params.F(i, j);
        const auto col = static_cast<Eigen::Index>(a);
        w(i, col) = params.row_signs[static_cast<std::size_t>(i)] * f;
        w(j, col) = -params.row_signs[static_cast<std::size_t>(j)] * f;
    }

    params.tau.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double tau = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double f = params.F(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            if (j == i || f == 0.0) continue;
            tau += f * (1.0 - mp[i].dot(mp[j])) / (mp[i] - mp[j]).norm();
        }
        params.tau[i] = tau;
    }
    params.equilibrium_residual = pairwise_equilibrium_residual(params.F, mp);

    b.construction = Construction::FourBySix;
    b.witness = WitnessMatrix(std::move(w));
    b.states.assign(m.begin(), m.end());
    b.measurements = std::move(v);
    b.ideal_value = ideal;
    b.params = std::move(params);
    if (std::any_of(coefficients.begin(), coefficients.end(), [](double c) { return c < 0.0; })) {
        check_columns(b, false);
    }
    return b;
}

WitnessBundle build_4x6(const Povm &povm, double penalty) {
    if (!(penalty > 0.0)) fail(ErrorCode::InvalidK, "POVM penalty weight k must be positive");
    std::vector<Vec3> m;
    for (const auto &n : povm.vectors()) m.emplace_back(-n);
    auto b = build_pairwise(m, povm.weights(), false);
    b.witness = b.witness.with_target(povm, penalty);
    return b;
}

FourByThreeParams umbrella_params(double c) {
    if (!(c >= 0.0 && c <= 3.0)) fail(ErrorCode::OutOfRange, "umbrella parameter c must lie in [0, 3]");
    const double norm = std::sqrt(3.0 + c * c);
    const double q = 1.0 / std::sqrt(3.0);
    return FourByThreeParams{{c / norm, 1.0 / norm, 1.0 / norm, 1.0 / norm}, {q, q, q}};
}

Eigen::MatrixXd umbrella_matrix(double c) { return four_by_three_matrix(umbrella_params(c)); }

std::array<Vec3, 4> umbrella_states(double c) {
    if (!(c >= 0.0 && c <= 3.0)) fail(ErrorCode::OutOfRange, "umbrella parameter c must lie in [0, 3]");
    const double s = std::sqrt(9.0 - c * c);
    return {Vec3(0.0, 0.0, -1.0), Vec3(-s / 3.0, 0.0, c / 3.0), Vec3(s / 6.0, s / (2.0 * std::sqrt(3.0)), c / 3.0),
            Vec3(s / 6.0, -s / (2.0 * std::sqrt(3.0)), c / 3.0)};
}

std::array<Vec3, 3> umbrella_measurements(double c) {
    if (!(c >= 0.0 && c <= 3.0)) fail(ErrorCode::OutOfRange, "umbrella parameter c must lie in [0, 3]");
    const double s = std::sqrt(9.0 - c * c);
    const double r = 1.0 / (2.0 * std::sqrt(9.0 + 3.0 * c * c));
    return {Vec3(-2.0 * r * s, 0.0, -4.0 * r * c), Vec3(r * s, r * std::sqrt(3.0) * s, -4.0 * r * c),
            Vec3(r * s, -r * std::sqrt(3.0) * s, -4.0 * r * c)};
}

WitnessBundle umbrella(double c) {
    const auto params = umbrella_params(c);
    const auto m = umbrella_states(c);
    const auto v = umbrella_measurements(c);
    WitnessBundle b;
    b.construction = Construction::Umbrella;
    b.witness = make_witness(four_by_three_matrix(params), m, true, 1.0);
    b.states.assign(m.begin(), m.end());
    b.measurements.assign(v.begin(), v.end());
    b.ideal_value = 2.0;
    b.params = UmbrellaParams{c, params};
    return b;
}

} // namespace pmst
