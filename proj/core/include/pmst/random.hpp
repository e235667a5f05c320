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

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <random>
#include <vector>

#include "pmst/qstate.hpp"

namespace pmst {

/// Seeded generator whose draws are identical across platforms and standard
/// library implementations.
class Rng {
  public:
    explicit Rng(std::initializer_list<std::uint64_t> key) {
        std::vector<std::uint32_t> words;
        for (auto k : key) {
            words.push_back(static_cast<std::uint32_t>(k));
            words.push_back(static_cast<std::uint32_t>(k >> 32));
        }
        std::seed_seq seq(words.begin(), words.end());
        engine_.seed(seq);
    }

    std::uint64_t bits() { return engine_(); }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on the unit sphere.
    Vec3 sphere() {
        const double z = 2.0 * uniform() - 1.0;
        const double phi = 2.0 * std::numbers::pi * uniform();
        const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
        return {rho * std::cos(phi), rho * std::sin(phi), z};
    }

    /// Uniform on the unit circle of the xz-plane.
    Vec3 circle_xz() {
        const double t = 2.0 * std::numbers::pi * uniform();
        return {std::cos(t), 0.0, std::sin(t)};
    }

  private:
    std::mt19937_64 engine_;
};

} // namespace pmst
