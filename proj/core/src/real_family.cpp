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

#include "pmst/real_family.hpp"

#include <cmath>
#include <numbers>

#include "pmst/error.hpp"
#include "pmst/evaluate.hpp"
#include "pmst/witness.hpp"

namespace pmst {

namespace {

void require_range(double c, double lo, double hi) {
    if (!(c >= lo && c <= hi)) {
        fail(ErrorCode::OutOfRange, "real family parameter " + std::to_string(c) + " outside [" +
                                        std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
}

} // namespace

RealFamilyConfig real_family_small(double c) {
    require_range(c, 0.0, 1.0);
    const double a = c * c - 2.0 * c;
    const double f = (a + 25.0) / (15.0 - a) + 4.0 * std::sqrt(5.0) * std::sqrt((a + 5.0) / ((a - 15.0) * (a - 15.0)));
    RealFamilyConfig cfg;
    cfg.c = c;
    cfg.small_branch = true;
    cfg.alpha = 2.0 * std::atan(std::sqrt(f));
    const double ca = std::cos(cfg.alpha), sa = std::sin(cfg.alpha);
    cfg.states = {Vec3(1.0, 0.0, 0.0), Vec3(ca, 0.0, sa), Vec3(ca, 0.0, -sa), Vec3(1.0, 0.0, 0.0)};
    return cfg;
}

RealFamilyConfig real_family_large(double c) {
    require_range(c, 1.0, 3.0);
    const double c2 = c * c;
    // The discriminant reaches zero at c = 3; clamp rounding below it.
    const double root = std::sqrt(std::max(0.0, -9.0 + 82.0 * c2 - 9.0 * c2 * c2));
    RealFamilyConfig cfg;
    cfg.c = c;
    cfg.small_branch = false;
    cfg.beta = std::numbers::pi / 2.0 + std::atan2(7.0 * c2 - 3.0, root);
    cfg.gamma = std::numbers::pi / 2.0 - std::atan2(3.0 * c2 - 7.0, root);
    cfg.states = {Vec3(std::cos(cfg.beta), 0.0, std::sin(cfg.beta)),
                  Vec3(std::cos(cfg.gamma), 0.0, -std::sin(cfg.gamma)), Vec3(1.0, 0.0, 0.0), Vec3(1.0, 0.0, 0.0)};
    return cfg;
}

RealFamilyConfig real_family(double c) {
    require_range(c, 0.0, 3.0);
    return c <= 1.0 ? real_family_small(c) : real_family_large(c);
}

double real_family_value(double c) {
    const auto cfg = real_family(c);
    return best_measurements(umbrella_matrix(c), cfg.states).value;
}

} // namespace pmst
