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

#include "pmst/certify.hpp"

#include <cmath>
#include <limits>

#include "pmst/bounds.hpp"
#include "pmst/error.hpp"
#include "pmst/real_family.hpp"

namespace pmst {

namespace {

double z_score(double value, double threshold, double sigma) {
    const double diff = value - threshold;
    if (sigma > 0.0) return diff / sigma;
    if (diff == 0.0) return 0.0;
    return diff > 0.0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
}

} // namespace

Certificate certify(double value, double sigma, const Thresholds &thresholds, double z_min) {
    if (!std::isfinite(value) || !(sigma >= 0.0)) fail(ErrorCode::InvalidInput, "estimate must be finite with sigma >= 0");
    Certificate cert;
    cert.value = value;
    cert.sigma = sigma;
    cert.thresholds = thresholds;
    cert.z_min = z_min;
    cert.z_class = z_score(value, thresholds.classical, sigma);
    cert.z_real = z_score(value, thresholds.real, sigma);
    cert.beats_classical = cert.z_class >= z_min;
    cert.beats_real = cert.z_real >= z_min;
    return cert;
}

Certificate certify(const WitnessEstimate &estimate, const Thresholds &thresholds, double z_min) {
    return certify(estimate.value, estimate.sigma, thresholds, z_min);
}

Thresholds umbrella_thresholds(double c) {
    return Thresholds{umbrella_classical_bound(c), real_family_value(c), 2.0};
}

} // namespace pmst
