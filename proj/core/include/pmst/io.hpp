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

// Text formats: witness bundles and circuit specs as JSON, counts as CSV.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pmst/simulator.hpp"
#include "pmst/witness.hpp"

namespace pmst {

/// Provenance embedded in every emitted file.
struct RunRecord {
    std::string tool = "pmst";
    std::string version;
    std::string command;
    std::vector<std::pair<std::string, std::string>> config;
    std::vector<std::uint64_t> seeds;
    /// ISO 8601 UTC. Left out of counts files so they stay reproducible.
    std::string timestamp;
    /// name -> SHA-256 hex digest of inputs and sibling outputs.
    std::vector<std::pair<std::string, std::string>> artifacts;
};

/// Serializes the bundle. Numbers use the shortest text that reads back
/// to the same double.
std::string bundle_to_json(const WitnessBundle &bundle, const std::optional<RunRecord> &run = std::nullopt);
/// Throws MalformedFile on syntax or schema errors; validation errors of the
/// contained objects propagate with their own codes.
WitnessBundle bundle_from_json(std::string_view text);

std::string circuit_spec_to_json(const CircuitSpec &spec, const std::optional<RunRecord> &run = std::nullopt);
CircuitSpec circuit_spec_from_json(std::string_view text);

/// Header `x,y,b,count` with 1-based x and y, preceded by `# key: value`
/// comment lines for the run record.
std::string counts_to_csv(const StatTable &table, const std::optional<RunRecord> &run = std::nullopt);
/// Every (x, y, b) row must be present exactly once and every cell must
/// have the same total. Throws MalformedFile otherwise.
StatTable counts_from_csv(std::string_view text);

std::string run_record_to_json(const RunRecord &run);

std::string read_file(const std::filesystem::path &path);
/// Writes to a temporary sibling and renames it over `path`.
void atomic_write(const std::filesystem::path &path, std::string_view content);

} // namespace pmst
