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

#include "pmst/seesaw.hpp"

#include <cmath>

#include "pmst/error.hpp"
#include "pmst/evaluate.hpp"

namespace pmst {

namespace {

// Orthonormal tangent basis at unit vector x, one column per direction.
Eigen::Matrix<double, 3, Eigen::Dynamic> tangent_basis(const Vec3 &x, Model model) {
    if (model == Model::RealQubit) {
        Eigen::Matrix<double, 3, Eigen::Dynamic> t(3, 1);
        t.col(0) = Vec3(-x(2), 0.0, x(0));
        return t;
    }
    const Vec3 a = std::abs(x(0)) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
    Vec3 t1 = a - a.dot(x) * x;
    t1.normalize();
    Eigen::Matrix<double, 3, Eigen::Dynamic> t(3, 2);
    t.col(0) = t1;
    t.col(1) = x.cross(t1);
    return t;
}

Vec3 flat(const Vec3 &v) {
    Vec3 out(v(0), 0.0, v(2));
    const double n = out.norm();
    return n > 0.0 ? Vec3(out / n) : Vec3::UnitZ();
}

} // namespace

std::string_view model_name(Model m) noexcept {
    switch (m) {
    case Model::Classical: return "classical";
    case Model::RealQubit: return "real_qubit";
    case Model::ComplexQubit: return "complex_qubit";
    }
    return "unknown";
}

Model parse_model(std::string_view name) {
    for (auto m : {Model::Classical, Model::RealQubit, Model::ComplexQubit}) {
        if (model_name(m) == name) return m;
    }
    if (name == "real") return Model::RealQubit;
    if (name == "complex") return Model::ComplexQubit;
    fail(ErrorCode::InvalidInput, "unknown model '" + std::string(name) + "'");
}

double bilinear_value(const Eigen::MatrixXd &w, std::span<const Vec3> m, std::span<const Vec3> v) {
    double total = 0.0;
    for (Eigen::Index x = 0; x < w.rows(); ++x) {
        Vec3 u = Vec3::Zero();
        for (Eigen::Index y = 0; y < w.cols(); ++y) u += w(x, y) * v[static_cast<std::size_t>(y)];
        total += m[static_cast<std::size_t>(x)].dot(u);
    }
    return total;
}

double newton_polish(const Eigen::MatrixXd &w, std::vector<Vec3> &m, std::vector<Vec3> &v, Model model,
                     int max_iterations) {
    const auto nm = static_cast<std::size_t>(w.rows());
    const auto nv = static_cast<std::size_t>(w.cols());
    const std::size_t n = nm + nv;
    const Eigen::Index d = model == Model::RealQubit ? 1 : 2;
    const Eigen::Index dim = d * static_cast<Eigen::Index>(n);

    std::vector<Vec3> xs(n);
    std::vector<Eigen::Matrix<double, 3, Eigen::Dynamic>> basis(n);
    double value = bilinear_value(w, m, v);
    int stalls = 0;

    for (int it = 0; it < max_iterations; ++it) {
        for (std::size_t i = 0; i < nm; ++i) xs[i] = m[i];
        for (std::size_t j = 0; j < nv; ++j) xs[nm + j] = v[j];

        std::vector<Vec3> grads(n, Vec3::Zero());
        for (std::size_t x = 0; x < nm; ++x) {
            for (std::size_t y = 0; y < nv; ++y) {
                const double c = w(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y));
                grads[x] += c * v[y];
                grads[nm + y] += c * m[x];
            }
        }

        Eigen::VectorXd g(dim);
        Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
        for (std::size_t i = 0; i < n; ++i) {
            basis[i] = tangent_basis(xs[i], model);
            const auto off = static_cast<Eigen::Index>(i) * d;
            g.segment(off, d) = basis[i].transpose() * grads[i];
            const double radial = xs[i].dot(grads[i]);
            for (Eigen::Index a = 0; a < d; ++a) h(off + a, off + a) -= radial;
        }
        if (g.norm() < 1e-15) break;
        for (std::size_t x = 0; x < nm; ++x) {
            for (std::size_t y = 0; y < nv; ++y) {
                const double c = w(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y));
                if (c == 0.0) continue;
                const Eigen::MatrixXd block = c * basis[x].transpose() * basis[nm + y];
                const auto ox = static_cast<Eigen::Index>(x) * d;
                const auto oy = static_cast<Eigen::Index>(nm + y) * d;
                h.block(ox, oy, d, d) += block;
                h.block(oy, ox, d, d) += block.transpose();
            }
        }

        // Rotation gauge: infinitesimal common rotations about each axis.
        const int first_axis = model == Model::RealQubit ? 1 : 0;
        const int last_axis = model == Model::RealQubit ? 1 : 2;
        Eigen::MatrixXd gauge(dim, last_axis - first_axis + 1);
        for (int k = first_axis; k <= last_axis; ++k) {
            const Vec3 e = Vec3::Unit(k);
            for (std::size_t i = 0; i < n; ++i) {
                gauge.block(static_cast<Eigen::Index>(i) * d, k - first_axis, d, 1) =
                    basis[i].transpose() * e.cross(xs[i]);
            }
        }
        Eigen::JacobiSVD<Eigen::MatrixXd> gsvd(gauge, Eigen::ComputeThinU);
        Eigen::MatrixXd proj = Eigen::MatrixXd::Identity(dim, dim);
        const double gmax = gsvd.singularValues().size() ? gsvd.singularValues()(0) : 0.0;
        for (Eigen::Index k = 0; k < gsvd.singularValues().size(); ++k) {
            if (gsvd.singularValues()(k) > 1e-10 * std::max(gmax, 1.0)) {
                proj -= gsvd.matrixU().col(k) * gsvd.matrixU().col(k).transpose();
            }
        }
        const Eigen::MatrixXd ph = proj * h * proj;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (ph + ph.transpose()));
        const Eigen::MatrixXd &u = eig.eigenvectors();
        const Eigen::VectorXd &lam = eig.eigenvalues();
        Eigen::VectorXd step = Eigen::VectorXd::Zero(dim);
        for (Eigen::Index k = 0; k < dim; ++k) {
            if ((proj * u.col(k)).squaredNorm() <= 0.5) continue;
            step += (u.col(k).dot(g) / std::max(std::abs(lam(k)), 1e-14)) * u.col(k);
        }

        bool accepted = false;
        std::vector<Vec3> mt(nm), vt(nv);
        for (double t = 1.0; t > 1e-6; t *= 0.5) {
            for (std::size_t i = 0; i < n; ++i) {
                Vec3 moved = xs[i] + t * basis[i] * step.segment(static_cast<Eigen::Index>(i) * d, d);
                moved.normalize();
                if (i < nm) mt[i] = moved; else vt[i - nm] = moved;
            }
            const double trial = bilinear_value(w, mt, vt);
            if (trial >= value) {
                stalls = trial > value ? 0 : stalls + 1;
                value = trial;
                m = mt;
                v = vt;
                accepted = true;
                break;
            }
        }
        if (!accepted || stalls >= 2) break;
    }
    return value;
}

SeesawRun seesaw(const Eigen::MatrixXd &w, std::vector<Vec3> v0, Model model, const SeesawOptions &options) {
    if (static_cast<Eigen::Index>(v0.size()) != w.cols()) {
        fail(ErrorCode::DimensionMismatch, "initial directions do not match witness columns");
    }
    if (model == Model::RealQubit) {
        for (auto &v : v0) v = flat(v);
    }
    SeesawRun run;
    run.measurements = std::move(v0);
    double last = -HUGE_VAL;
    for (run.sweeps = 1; run.sweeps <= options.max_sweeps; ++run.sweeps) {
        run.states = best_states(w, run.measurements).states;
        const auto resp = best_measurements(w, run.states);
        for (std::size_t y = 0; y < resp.directions.size(); ++y) {
            if (!resp.flagged[y]) run.measurements[y] = resp.directions[y];
        }
        run.value = resp.value;
        if (options.record_trace) run.trace.push_back(run.value);
        if (std::abs(run.value - last) < options.tolerance) {
            run.converged = true;
            break;
        }
        last = run.value;
    }
    run.sweeps = std::min(run.sweeps, options.max_sweeps);
    if (options.polish && w.size() > 0) {
        newton_polish(w, run.states, run.measurements, model, options.polish_iterations);
    }
    run.value = bilinear_value(w, run.states, run.measurements);
    return run;
}

SeesawRun seesaw_mixed(const Eigen::MatrixXd &w, std::vector<Vec3> m0, Model model, const SeesawOptions &options) {
    if (static_cast<Eigen::Index>(m0.size()) != w.rows()) {
        fail(ErrorCode::DimensionMismatch, "initial states do not match witness rows");
    }
    const Eigen::Index cols = w.cols();
    const Eigen::VectorXd colsum = w.colwise().sum().transpose();
    SeesawRun run;
    run.states = std::move(m0);
    if (model == Model::RealQubit) {
        for (auto &m : run.states) m = flat(m);
    }
    run.measurements.assign(static_cast<std::size_t>(cols), kDefaultDirection);
    run.degenerate_sign.assign(static_cast<std::size_t>(cols), 0);
    Eigen::MatrixXd active = w;

    // Chooses the better option per column given the current states and
    // returns the resulting value.
    auto choose = [&]() {
        const auto resp = best_measurements(w, run.states);
        double value = 0.0;
        for (Eigen::Index y = 0; y < cols; ++y) {
            const auto i = static_cast<std::size_t>(y);
            if (std::abs(colsum(y)) > resp.s_norm[i]) {
                run.degenerate_sign[i] = colsum(y) >= 0.0 ? 1 : -1;
                active.col(y).setZero();
                value += std::abs(colsum(y));
            } else {
                run.degenerate_sign[i] = 0;
                active.col(y) = w.col(y);
                if (!resp.flagged[i]) run.measurements[i] = resp.directions[i];
                value += resp.s_norm[i];
            }
        }
        return value;
    };
    auto fixed_part = [&]() {
        double s = 0.0;
        for (Eigen::Index y = 0; y < cols; ++y) {
            if (run.degenerate_sign[static_cast<std::size_t>(y)] != 0) s += std::abs(colsum(y));
        }
        return s;
    };

    double last = -HUGE_VAL;
    for (run.sweeps = 1; run.sweeps <= options.max_sweeps; ++run.sweeps) {
        run.value = choose();
        if (options.record_trace) run.trace.push_back(run.value);
        if (std::abs(run.value - last) < options.tolerance) {
            run.converged = true;
            break;
        }
        last = run.value;
        run.states = best_states(active, run.measurements).states;
    }
    run.sweeps = std::min(run.sweeps, options.max_sweeps);
    if (options.polish) {
        newton_polish(active, run.states, run.measurements, model, options.polish_iterations);
        // A polished configuration may change which option wins a column.
        const double before = bilinear_value(active, run.states, run.measurements) + fixed_part();
        const auto saved_states = run.states;
        const auto saved_meas = run.measurements;
        const auto saved_signs = run.degenerate_sign;
        const Eigen::MatrixXd saved_active = active;
        if (choose() < before) {
            run.states = saved_states;
            run.measurements = saved_meas;
            run.degenerate_sign = saved_signs;
            active = saved_active;
        }
    }
    run.value = bilinear_value(active, run.states, run.measurements) + fixed_part();
    return run;
}

} // namespace pmst
