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

#include "pmst/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "pmst/error.hpp"

namespace pmst {

namespace {

double clamp01(double p) { return std::clamp(p, 0.0, 1.0); }

} // namespace

bool is_unit(const Vec3 &v) noexcept {
    return std::abs(v.norm() - 1.0) <= kUnitTolerance;
}

void require_unit(const Vec3 &v, const char *what) {
    if (!is_unit(v)) {
        std::ostringstream msg;
        msg << what << " must be a unit vector (norm " << v.norm() << ")";
        fail(ErrorCode::NotUnit, msg.str());
    }
}

int numerical_rank(const Eigen::MatrixXd &m) {
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto &s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return 0;
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s(i) > kRankTolerance * s(0)) ++rank;
    }
    return rank;
}

Eigen::Matrix3Xd as_columns(std::span<const Vec3> vectors) {
    Eigen::Matrix3Xd out(3, static_cast<Eigen::Index>(vectors.size()));
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        out.col(static_cast<Eigen::Index>(i)) = vectors[i];
    }
    return out;
}

QubitState::QubitState(const Vec3 &bloch) : bloch_(bloch) {
    if (!bloch.allFinite() || bloch.norm() > 1.0 + 1e-12) {
        fail(ErrorCode::InvalidInput, "state Bloch vector must lie in the unit ball");
    }
}

BinaryMeasurement::BinaryMeasurement(double bias, const Vec3 &direction)
    : bias_(bias), direction_(direction) {
    if (!(bias >= -1.0 && bias <= 1.0)) {
        fail(ErrorCode::InvalidInput, "measurement bias must lie in [-1, 1]");
    }
    require_unit(direction, "measurement direction");
}

Povm::Povm(std::vector<double> weights, std::vector<Vec3> vectors)
    : weights_(std::move(weights)), vectors_(std::move(vectors)) {
    const std::size_t n = weights_.size();
    if (n != vectors_.size() || (n != 3 && n != 4)) {
        fail(ErrorCode::InvalidPovm, "a POVM needs 3 or 4 (weight, vector) pairs");
    }
    double total = 0.0;
    Vec3 centroid = Vec3::Zero();
    for (std::size_t b = 0; b < n; ++b) {
        if (!(weights_[b] > 0.0)) fail(ErrorCode::InvalidPovm, "POVM weights must be positive");
        require_unit(vectors_[b], "POVM Bloch vector");
        total += weights_[b];
        centroid += weights_[b] * vectors_[b];
    }
    if (std::abs(total - 1.0) > 1e-10) fail(ErrorCode::InvalidPovm, "POVM weights must sum to 1");
    if (centroid.norm() > 1e-10) {
        fail(ErrorCode::InvalidPovm, "weighted Bloch vectors must sum to zero");
    }
    const int rank = numerical_rank(as_columns(vectors_));
    const int wanted = n == 4 ? 3 : 2;
    if (rank != wanted) {
        fail(ErrorCode::NonExtremal, "POVM Bloch vectors do not have the span required for extremality");
    }
}

GramMatrix::GramMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols()) fail(ErrorCode::InvalidInput, "Gram matrix must be square");
    for (Eigen::Index i = 0; i < entries_.rows(); ++i) {
        if (std::abs(entries_(i, i) - 1.0) > 1e-9) {
            fail(ErrorCode::InvalidInput, "Gram matrix must have a unit diagonal");
        }
        for (Eigen::Index j = 0; j < i; ++j) {
            if (std::abs(entries_(i, j) - entries_(j, i)) > 1e-12) {
                fail(ErrorCode::InvalidInput, "Gram matrix must be symmetric");
            }
        }
    }
}

GramMatrix GramMatrix::of(std::span<const Vec3> unit_vectors) {
    const Eigen::Matrix3Xd cols = as_columns(unit_vectors);
    Eigen::MatrixXd g = cols.transpose() * cols;
    g.diagonal().setOnes();
    g = 0.5 * (g + g.transpose()).eval();
    return GramMatrix(std::move(g));
}

double GramMatrix::min_eigenvalue() const {
    if (size() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(entries_, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

bool GramMatrix::is_legitimate() const { return min_eigenvalue() >= -1e-9; }

std::vector<Vec3> GramMatrix::realize() const {
    if (!is_legitimate()) fail(ErrorCode::IllegitimateGram, "Gram matrix is not positive semidefinite");
    const Eigen::Index n = size();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(entries_);
    const auto &vals = es.eigenvalues();
    const double top = vals(n - 1);
    int significant = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (vals(i) > 1e-9 * std::max(1.0, top)) ++significant;
    }
    if (significant > 3) {
        fail(ErrorCode::IllegitimateGram, "Gram matrix has rank above 3 and has no Bloch realization");
    }
    std::vector<Vec3> out(static_cast<std::size_t>(n), Vec3::Zero());
    for (Eigen::Index k = 0; k < std::min<Eigen::Index>(3, n); ++k) {
        const Eigen::Index col = n - 1 - k;
        const double scale = std::sqrt(std::max(0.0, vals(col)));
        for (Eigen::Index i = 0; i < n; ++i) {
            out[static_cast<std::size_t>(i)](k) = scale * es.eigenvectors()(i, col);
        }
    }
    for (auto &v : out) v.normalize();
    return out;
}

std::array<double, 2> born_binary(const QubitState &state, const BinaryMeasurement &meas) {
    const double mu = meas.bias();
    const double diff = mu + (1.0 - std::abs(mu)) * state.bloch().dot(meas.direction());
    const double p0 = clamp01(0.5 * (1.0 + diff));
    return {p0, clamp01(1.0 - p0)};
}

std::vector<double> born_povm(const QubitState &state, const Povm &povm) {
    std::vector<double> p(povm.outcomes());
    for (std::size_t b = 0; b < p.size(); ++b) {
        p[b] = clamp01(povm.weights()[b] * (1.0 + state.bloch().dot(povm.vectors()[b])));
    }
    return p;
}

Povm povm_from_bloch(std::span<const Vec3> vectors) {
    const std::size_t n = vectors.size();
    if (n != 3 && n != 4) fail(ErrorCode::InvalidPovm, "need 3 or 4 Bloch vectors");
    for (const auto &v : vectors) require_unit(v, "POVM Bloch vector");

    const Eigen::MatrixXd stacked = as_columns(vectors);
    const int rank = numerical_rank(stacked);
    const int nullity = static_cast<int>(n) - rank;
    if (nullity > 1) {
        fail(ErrorCode::NonExtremal,
             "Bloch vectors admit more than one vanishing combination; the POVM is not unique");
    }
    if (nullity < 1) {
        fail(ErrorCode::NoValidWeights, "Bloch vectors admit no vanishing combination");
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked, Eigen::ComputeFullV);
    Eigen::VectorXd coeff = svd.matrixV().col(static_cast<Eigen::Index>(n) - 1);
    for (Eigen::Index i = 0; i < coeff.size(); ++i) {
        if (std::abs(coeff(i)) > 1e-12) {
            if (coeff(i) < 0.0) coeff = -coeff;
            break;
        }
    }
    const double largest = coeff.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < coeff.size(); ++i) {
        if (!(coeff(i) > 1e-12 * largest)) {
            fail(ErrorCode::NoValidWeights, "vanishing combination is not all-positive");
        }
    }
    coeff /= coeff.sum();

    std::vector<double> weights(coeff.data(), coeff.data() + coeff.size());
    return Povm(std::move(weights), std::vector<Vec3>(vectors.begin(), vectors.end()));
}

Povm sic_povm() {
    const double s2 = std::sqrt(2.0);
    const double s6 = std::sqrt(6.0);
    std::vector<Vec3> n{
        Vec3(0.0, 0.0, 1.0),
        Vec3(2.0 * s2 / 3.0, 0.0, -1.0 / 3.0),
        Vec3(-s2 / 3.0, s6 / 3.0, -1.0 / 3.0),
        Vec3(-s2 / 3.0, -s6 / 3.0, -1.0 / 3.0),
    };
    return Povm({0.25, 0.25, 0.25, 0.25}, std::move(n));
}

} // namespace pmst
