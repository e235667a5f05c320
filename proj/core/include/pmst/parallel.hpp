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

#include <cstddef>
#include <functional>

namespace pmst {

/// Worker threads for independent tasks: PMST_THREADS if set and positive,
/// otherwise the hardware concurrency (at least one).
unsigned worker_count();

/// Runs fn(i) for i in [0, n) on up to worker_count() threads. Each index is
/// visited exactly once. The first exception thrown is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)> &fn);

} // namespace pmst
