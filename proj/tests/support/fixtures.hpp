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

#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Geometry>

#include "pmst/error.hpp"
#include "pmst/qstate.hpp"
#include "pmst/random.hpp"

namespace pmst::testing {

inline Vec3 unit(double x, double y, double z) { return Vec3(x, y, z).normalized(); }

inline std::vector<Vec3> tetrahedron() {
    const double s = std::sqrt(8.0) / 3.0, t = std::sqrt(2.0) / 3.0, u = std::sqrt(2.0 / 3.0);
    return {Vec3(0, 0, 1), Vec3(s, 0, -1.0 / 3), Vec3(-t, u, -1.0 / 3), Vec3(-t, -u, -1.0 / 3)};
}

inline Eigen::Matrix3d random_rotation(Rng &rng) {
    Eigen::Quaterniond q(rng.uniform() - 0.5, rng.uniform() - 0.5, rng.uniform() - 0.5, rng.uniform() - 0.5);
    return q.normalized().toRotationMatrix();
}

// Rejection sampling: four random directions define a POVM when the origin
// lies inside their convex hull.
inline Povm random_extremal_povm(Rng &rng) {
    for (;;) {
        std::vector<Vec3> n;
        for (int i = 0; i < 4; ++i) n.push_back(rng.sphere());
        try {
            auto povm = povm_from_bloch(n);
            bool ok = true;
            for (double l : povm.weights()) ok = ok && l > 1e-3;
            if (ok) return povm;
        } catch (const Error &) {
        }
    }
}

inline std::vector<Vec3> negated(const std::vector<Vec3> &v) {
    std::vector<Vec3> out;
    for (const auto &x : v) out.emplace_back(-x);
    return out;
}

// Three coplanar states with null combination (1, 1, sqrt 3).
inline std::vector<Vec3> coplanar_triple() {
    const double h = std::sqrt(3.0) / 2.0;
    return {Vec3(1.0, 0.0, 0.0), Vec3(0.5, 0.0, h), Vec3(-h, 0.0, -0.5)};
}

// Trine plus one more in-plane direction; the null space is two-dimensional.
inline std::vector<Vec3> coplanar_quad() {
    const double r = std::sqrt(3.0) / 2.0;
    return {Vec3(1, 0, 0), Vec3(-0.5, r, 0), Vec3(-0.5, -r, 0), Vec3(0, 1, 0)};
}

// One null combination of coplanar_quad(), normalized.
inline std::array<double, 4> coplanar_quad_p() {
    const double r = std::sqrt(3.0) / 2.0, t = 0.2;
    std::array<double, 4> p{1.0, 1.0 + t, 1.0 - t, -2.0 * r * t};
    double n = 0.0;
    for (double x : p) n += x * x;
    for (double &x : p) x /= std::sqrt(n);
    return p;
}

// Classical maximum by brute force over Alice's bit assignments and Bob's
// four response functions per setting.
inline double classical_oracle(const Eigen::MatrixXd &w) {
    const int mm = static_cast<int>(w.rows()), mv = static_cast<int>(w.cols());
    double best = -1e300;
    for (int a = 0; a < (1 << mm); ++a) {
        double total = 0.0;
        for (int y = 0; y < mv; ++y) {
            double col = -1e300;
            for (int g = 0; g < 4; ++g) {
                double s = 0.0;
                for (int x = 0; x < mm; ++x) {
                    const int bit = (a >> x) & 1;
                    const int out = (g >> bit) & 1;
                    s += w(x, y) * (out ? -1.0 : 1.0);
                }
                col = std::max(col, s);
            }
            total += col;
        }
        best = std::max(best, total);
    }
    return best;
}

} // namespace pmst::testing
