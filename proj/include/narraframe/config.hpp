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

#ifndef NARRAFRAME_CONFIG_HPP_
#define NARRAFRAME_CONFIG_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "narraframe/corpus.hpp"
#include "narraframe/embedding.hpp"
#include "narraframe/frameaxis.hpp"
#include "narraframe/kmeans.hpp"
#include "narraframe/narrative_roles.hpp"
#include "narraframe/overrepresentation.hpp"
#include "narraframe/umap.hpp"

namespace narraframe {

struct EmbeddingConfig {
  GloveParams glove;
  int window = 10;
  int min_count = 5;
};

struct LogOddsConfig {
  int top_k = kDefaultTopTerms;
  int shared_top_k = 50;
  bool exclude_mentions = true;
  std::set<std::string, std::less<>> exclusions;
};

struct FramesConfig {
  int top_k = kDefaultDifferentialFrames;
  int top_tweets = kDefaultTopDocuments;
  bool stopwords = true;
};

struct RolesConfig {
  int max_tokens = kDefaultMaxRoleTokens;
  int top_verbs = kDefaultTopVerbs;
  int verb_clusters = kDefaultVerbClusters;
  int top_n = 20;
  int combinations_top_k = 10;
  // Cluster verbs on their 2-D projection (true) or on raw embeddings.
  bool cluster_projected = true;
  KMeansParams kmeans;
  std::set<std::string, std::less<>> us_terms = MembershipLists::defaults().us;
  std::set<std::string, std::less<>> them_terms = MembershipLists::defaults().them;
  std::map<Party, std::vector<std::string>> party_seeds = {
      {Party::D, {"democrat", "democratic"}}, {Party::R, {"republican"}}};
  int party_expansion_k = 10;
  // Hand-curated additions to the expanded party term lists.
  std::map<Party, std::vector<std::string>> party_terms;
  std::map<std::string, std::vector<std::string>> verb_sets = {
      {"help", {"help", "save", "protect"}},
      {"stop", {"stop", "slow", "prevent"}},
      {"want", {"want"}}};
  std::map<std::string, std::string> patient_merge;
};

// Everything a run needs. Relative paths are resolved against the
// directory of the config file.
struct PipelineConfig {
  std::filesystem::path base_dir;
  std::filesystem::path tweets;
  std::filesystem::path antonyms;
  std::filesystem::path triples;
  std::optional<std::filesystem::path> pretrained_vectors;
  std::filesystem::path output_dir = "narraframe-out";
  std::optional<std::filesystem::path> cache_dir;

  std::vector<std::string> topic_keywords = {"covid", "coronavirus"};
  LogOddsConfig logodds;
  EmbeddingConfig embedding;
  UmapParams projection;
  FramesConfig frames;
  RolesConfig roles;
};

// Builds a config from JSON. Unknown keys and ill-typed values raise
// ConfigError.
PipelineConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir);
PipelineConfig load_config(const std::filesystem::path& path);

// Checks that referenced inputs exist and that counts are positive.
void validate_config(const PipelineConfig& config);

// Canonical JSON form; two equal configs serialize identically. Input
// paths are written relative to base_dir; the output and cache
// directories are left out since they do not change results.
nlohmann::json config_to_json(const PipelineConfig& config);
std::string config_hash(const PipelineConfig& config);

}  // namespace narraframe

#endif  // NARRAFRAME_CONFIG_HPP_
