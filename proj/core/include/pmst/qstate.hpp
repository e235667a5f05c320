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

// Bloch-ball value types for qubit prepare-and-measure scenarios.

#include <array>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace pmst {

using Vec3 = Eigen::Vector3d;

/// Tolerance on |norm - 1| for vectors that must be unit length.
inline constexpr double kUnitTolerance = 1e-9;
/// Singular values below this fraction of the largest count as zero.
inline constexpr double kRankTolerance = 1e-8;

/// True when |v| is 1 within kUnitTolerance.
bool is_unit(const Vec3 &v) noexcept;

/// Throws NotUnit naming `what` if v is not a unit vector.
void require_unit(const Vec3 &v, const char *what);

/// Number of singular values of `m` above kRankTolerance times the largest.
int numerical_rank(const Eigen::MatrixXd &m);

/// Stacks vectors as the columns of a 3 x n matrix.
Eigen::Matrix3Xd as_columns(std::span<const Vec3> vectors);

/// Qubit density matrix (1 + m.sigma)/2, stored as its Bloch vector.
class QubitState {
  public:
    QubitState() : bloch_(0.0, 0.0, 1.0) {}
    explicit QubitState(const Vec3 &bloch);

    const Vec3 &bloch() const noexcept { return bloch_; }
    bool is_pure() const noexcept { return is_unit(bloch_); }

  private:
    Vec3 bloch_;
};

/// Two-outcome measurement M0 - M1 = mu*1 + (1-|mu|) v.sigma.
///
/// mu = 0 is a von Neumann measurement along v; mu = +-1 always returns the
/// same outcome and v is irrelevant.
class BinaryMeasurement {
  public:
    BinaryMeasurement() : bias_(0.0), direction_(0.0, 0.0, 1.0) {}
    BinaryMeasurement(double bias, const Vec3 &direction);

    static BinaryMeasurement projective(const Vec3 &direction) {
        return BinaryMeasurement(0.0, direction);
    }
    /// Fixed-outcome measurement: outcome 0 for sign > 0, outcome 1 otherwise.
    static BinaryMeasurement fixed(int sign) {
        return BinaryMeasurement(sign > 0 ? 1.0 : -1.0, Vec3(0.0, 0.0, 1.0));
    }

    double bias() const noexcept { return bias_; }
    const Vec3 &direction() const noexcept { return direction_; }
    bool is_degenerate() const noexcept { return bias_ == 1.0 || bias_ == -1.0; }

  private:
    double bias_;
    Vec3 direction_;
};

/// Extremal qubit POVM with elements lambda_b (1 + n_b.sigma).
///
/// The constructor enforces sum(lambda) = 1, sum(lambda n) = 0, unit n_b, and
/// extremality: four outcomes must span 3D, three outcomes exactly a plane.
class Povm {
  public:
    Povm(std::vector<double> weights, std::vector<Vec3> vectors);

    std::size_t outcomes() const noexcept { return weights_.size(); }
    const std::vector<double> &weights() const noexcept { return weights_; }
    const std::vector<Vec3> &vectors() const noexcept { return vectors_; }

  private:
    std::vector<double> weights_;
    std::vector<Vec3> vectors_;
};

/// Symmetric unit-diagonal matrix of pairwise dot products.
class GramMatrix {
  public:
    /// Validates symmetry and the unit diagonal; PSD-ness is queried separately.
    explicit GramMatrix(Eigen::MatrixXd entries);

    static GramMatrix of(std::span<const Vec3> unit_vectors);

    const Eigen::MatrixXd &entries() const noexcept { return entries_; }
    Eigen::Index size() const noexcept { return entries_.rows(); }
    double operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }

    double min_eigenvalue() const;
    /// Positive semidefinite within -1e-9.
    bool is_legitimate() const;
    /// Unit vectors in R^3 whose Gram matrix is this one. Requires a
    /// legitimate matrix of rank at most 3; throws IllegitimateGram otherwise.
    std::vector<Vec3> realize() const;

  private:
    Eigen::MatrixXd entries_;
};

/// (P(0), P(1)) for a binary measurement on a qubit state.
std::array<double, 2> born_binary(const QubitState &state, const BinaryMeasurement &meas);

/// Outcome distribution P(b) = lambda_b (1 + m.n_b).
std::vector<double> born_povm(const QubitState &state, const Povm &povm);

/// Recovers the unique positive weights for three or four unit Bloch vectors.
/// Throws NonExtremal when the null space is not one-dimensional and
/// NoValidWeights when it cannot be scaled all-positive.
Povm povm_from_bloch(std::span<const Vec3> vectors);

/// The qubit SIC POVM with n_1 = (0,0,1) and the others at z = -1/3.
Povm sic_povm();

} // namespace pmst
