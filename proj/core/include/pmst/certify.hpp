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

#include "pmst/simulator.hpp"

namespace pmst {

struct Thresholds {
    double classical = 0.0;
    double real = 0.0;
    double complex = 2.0;
};

/// Outcome of comparing a measured witness against the classical and
/// real-qubit maxima in units of its standard deviation.
struct Certificate {
    double value = 0.0;
    double sigma = 0.0;
    Thresholds thresholds;
    double z_min = 3.0;
    double z_class = 0.0;
    double z_real = 0.0;
    bool beats_classical = false;
    bool beats_real = false;
};

/// z = (value - threshold) / sigma, a verdict holding iff z >= z_min. With
/// sigma = 0 the score is +-infinity (or 0 on equality).
Certificate certify(double value, double sigma, const Thresholds &thresholds, double z_min = 3.0);
Certificate certify(const WitnessEstimate &estimate, const Thresholds &thresholds, double z_min = 3.0);

/// Classical closed form, the coplanar family value and 2.
Thresholds umbrella_thresholds(double c);

} // namespace pmst
