// Copyright 2026 The Narraframe Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NARRAFRAME_PIPELINE_HPP_
#define NARRAFRAME_PIPELINE_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "narraframe/config.hpp"

namespace narraframe {

enum class Stage { Ingest, LogOdds, Embed, Project, Frames, Roles };

std::string_view stage_name(Stage stage);
std::optional<Stage> parse_stage(std::string_view name);
const std::vector<Stage>& all_stages();

struct ManifestEntry {
  std::string path;  // relative to the output directory
  std::string stage;
  std::uint64_t bytes = 0;
  std::string fnv1a;
  std::string config_hash;  // config that produced this file
};

// What a run left in the output directory. The manifest file itself is
// not listed.
struct ReportBundle {
  std::filesystem::path output_dir;
  std::string config_hash;
  std::vector<ManifestEntry> files;  // sorted by path
  bool partial = false;
  std::string failed_stage;
  std::string error;
  std::vector<std::string> notes;
};

inline constexpr std::string_view kManifestName = "manifest.json";

// Runs the requested stages in pipeline order, computing any prerequisite
// results without writing them. Entries of an earlier manifest in the same
// directory are kept unless rewritten. On failure the manifest is still
// written, flagged partial, and StageError is thrown.
ReportBundle run_stages(const PipelineConfig& config, const std::vector<Stage>& stages);
ReportBundle run_pipeline(const PipelineConfig& config);

nlohmann::json manifest_to_json(const ReportBundle& bundle);
ReportBundle manifest_from_json(const nlohmann::json& doc, const std::filesystem::path& output_dir);
// Empty optional when the directory has no manifest.
std::optional<ReportBundle> read_manifest(const std::filesystem::path& output_dir);

}  // namespace narraframe

#endif  // NARRAFRAME_PIPELINE_HPP_
