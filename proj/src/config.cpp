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

#include "narraframe/config.hpp"

#include <fstream>
#include <set>

#include "narraframe/error.hpp"
#include "narraframe/report.hpp"
#include "narraframe/text.hpp"

namespace narraframe {

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

// Typed access to one JSON object that remembers which keys were read.
class Section {
 public:
  Section(const json& node, std::string where) : node_(node), where_(std::move(where)) {
    if (!node_.is_object()) throw ConfigError(where_ + " must be a JSON object");
  }

  const json* find(const char* key) {
    seen_.insert(key);
    auto it = node_.find(key);
    return it == node_.end() ? nullptr : &*it;
  }

  void read(const char* key, int& out) {
    if (const json* v = find(key)) {
      if (!v->is_number_integer()) fail(key, "an integer");
      out = v->get<int>();
    }
  }
  void read(const char* key, std::uint64_t& out) {
    if (const json* v = find(key)) {
      if (!v->is_number_integer() || v->get<std::int64_t>() < 0) fail(key, "a non-negative integer");
      out = v->get<std::uint64_t>();
    }
  }
  void read(const char* key, double& out) {
    if (const json* v = find(key)) {
      if (!v->is_number()) fail(key, "a number");
      out = v->get<double>();
    }
  }
  void read(const char* key, bool& out) {
    if (const json* v = find(key)) {
      if (!v->is_boolean()) fail(key, "a boolean");
      out = v->get<bool>();
    }
  }
  void read(const char* key, std::string& out) {
    if (const json* v = find(key)) {
      if (!v->is_string()) fail(key, "a string");
      out = v->get<std::string>();
    }
  }
  void read(const char* key, std::vector<std::string>& out) {
    if (const json* v = find(key)) out = strings(*v, key);
  }
  void read(const char* key, std::set<std::string, std::less<>>& out) {
    if (const json* v = find(key)) {
      out.clear();
      for (auto& s : strings(*v, key)) out.insert(utf8_lower(s));
    }
  }
  void read(const char* key, std::map<Party, std::vector<std::string>>& out) {
    if (const json* v = find(key)) {
      if (!v->is_object()) fail(key, "an object keyed by party");
      out.clear();
      for (auto it = v->begin(); it != v->end(); ++it) {
        const Party party = parse_party(it.key());
        if (party == Party::Unknown) {
          throw ConfigError(where_ + "." + key + ": unknown party '" + it.key() + "'");
        }
        std::vector<std::string> terms;
        for (auto& s : strings(*it, key)) terms.push_back(utf8_lower(s));
        out[party] = std::move(terms);
      }
    }
  }
  void read(const char* key, std::map<std::string, std::vector<std::string>>& out) {
    if (const json* v = find(key)) {
      if (!v->is_object()) fail(key, "an object of string lists");
      out.clear();
      for (auto it = v->begin(); it != v->end(); ++it) {
        std::vector<std::string> terms;
        for (auto& s : strings(*it, key)) terms.push_back(utf8_lower(s));
        out[it.key()] = std::move(terms);
      }
    }
  }
  void read(const char* key, std::map<std::string, std::string>& out) {
    if (const json* v = find(key)) {
      if (!v->is_object()) fail(key, "an object of strings");
      out.clear();
      for (auto it = v->begin(); it != v->end(); ++it) {
        if (!it->is_string()) fail(key, "an object of strings");
        out[utf8_lower(it.key())] = utf8_lower(it->get<std::string>());
      }
    }
  }

  // Rejects keys that were never read, which catches typos.
  void finish() const {
    for (auto it = node_.begin(); it != node_.end(); ++it) {
      if (!seen_.count(it.key())) throw ConfigError(where_ + ": unknown key '" + it.key() + "'");
    }
  }

  const std::string& where() const { return where_; }

 private:
  [[noreturn]] void fail(const char* key, const char* what) const {
    throw ConfigError(where_ + "." + key + " must be " + what);
  }
  std::vector<std::string> strings(const json& v, const char* key) const {
    if (!v.is_array()) fail(key, "a list of strings");
    std::vector<std::string> out;
    for (const json& s : v) {
      if (!s.is_string()) fail(key, "a list of strings");
      out.push_back(s.get<std::string>());
    }
    return out;
  }

  const json& node_;
  std::string where_;
  std::set<std::string> seen_;
};

fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() ? path : (base / path).lexically_normal();
}

std::string relative_to(const fs::path& base, const fs::path& p) {
  if (base.empty()) return p.generic_string();
  fs::path rel = p.lexically_relative(base);
  return rel.empty() ? p.generic_string() : rel.generic_string();
}

json party_map(const std::map<Party, std::vector<std::string>>& m) {
  json out = json::object();
  for (const auto& [party, terms] : m) out[std::string(party_name(party))] = terms;
  return out;
}

}  // namespace

PipelineConfig parse_config(const json& doc, const fs::path& base_dir) {
  PipelineConfig c;
  c.base_dir = base_dir;
  Section root(doc, "config");

  if (const json* inputs = root.find("inputs")) {
    Section s(*inputs, "config.inputs");
    std::string tweets, antonyms, triples, pretrained;
    s.read("tweets", tweets);
    s.read("antonyms", antonyms);
    s.read("triples", triples);
    if (const json* v = s.find("pretrained_vectors"); v && !v->is_null()) {
      s.read("pretrained_vectors", pretrained);
      c.pretrained_vectors = resolve(base_dir, pretrained);
    }
    s.finish();
    if (!tweets.empty()) c.tweets = resolve(base_dir, tweets);
    if (!antonyms.empty()) c.antonyms = resolve(base_dir, antonyms);
    if (!triples.empty()) c.triples = resolve(base_dir, triples);
  }
  std::string output_dir;
  root.read("output_dir", output_dir);
  if (!output_dir.empty()) c.output_dir = resolve(base_dir, output_dir);
  else c.output_dir = resolve(base_dir, c.output_dir.string());
  if (const json* v = root.find("cache_dir"); v && !v->is_null()) {
    std::string cache;
    root.read("cache_dir", cache);
    c.cache_dir = resolve(base_dir, cache);
  }
  root.read("topic_keywords", c.topic_keywords);

  if (const json* node = root.find("logodds")) {
    Section s(*node, "config.logodds");
    s.read("top_k", c.logodds.top_k);
    s.read("shared_top_k", c.logodds.shared_top_k);
    s.read("exclude_mentions", c.logodds.exclude_mentions);
    s.read("exclusions", c.logodds.exclusions);
    s.finish();
  }
  if (const json* node = root.find("embedding")) {
    Section s(*node, "config.embedding");
    s.read("dim", c.embedding.glove.dim);
    s.read("epochs", c.embedding.glove.epochs);
    s.read("x_max", c.embedding.glove.x_max);
    s.read("alpha", c.embedding.glove.alpha);
    s.read("learning_rate", c.embedding.glove.learning_rate);
    s.read("seed", c.embedding.glove.seed);
    s.read("window", c.embedding.window);
    s.read("min_count", c.embedding.min_count);
    s.finish();
  }
  if (const json* node = root.find("projection")) {
    Section s(*node, "config.projection");
    s.read("n_neighbors", c.projection.n_neighbors);
    s.read("min_dist", c.projection.min_dist);
    s.read("spread", c.projection.spread);
    s.read("epochs", c.projection.epochs);
    s.read("seed", c.projection.seed);
    s.read("negative_sample_rate", c.projection.negative_sample_rate);
    s.finish();
  }
  if (const json* node = root.find("frames")) {
    Section s(*node, "config.frames");
    s.read("top_k", c.frames.top_k);
    s.read("top_tweets", c.frames.top_tweets);
    s.read("stopwords", c.frames.stopwords);
    s.finish();
  }
  if (const json* node = root.find("roles")) {
    Section s(*node, "config.roles");
    RolesConfig& r = c.roles;
    s.read("max_tokens", r.max_tokens);
    s.read("top_verbs", r.top_verbs);
    s.read("verb_clusters", r.verb_clusters);
    s.read("top_n", r.top_n);
    s.read("combinations_top_k", r.combinations_top_k);
    std::string space = r.cluster_projected ? "projection" : "embedding";
    s.read("cluster_space", space);
    if (space != "projection" && space != "embedding") {
      throw ConfigError("config.roles.cluster_space must be \"projection\" or \"embedding\"");
    }
    r.cluster_projected = space == "projection";
    s.read("kmeans_restarts", r.kmeans.restarts);
    s.read("kmeans_max_iter", r.kmeans.max_iter);
    s.read("seed", r.kmeans.seed);
    s.read("us_terms", r.us_terms);
    s.read("them_terms", r.them_terms);
    s.read("party_seeds", r.party_seeds);
    s.read("party_expansion_k", r.party_expansion_k);
    s.read("party_terms", r.party_terms);
    s.read("verb_sets", r.verb_sets);
    s.read("patient_merge", r.patient_merge);
    s.finish();
  }
  root.finish();
  return c;
}

PipelineConfig load_config(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded()) throw ConfigError("config file " + path.string() + " is not valid JSON");
  fs::path base = path.parent_path();
  if (base.empty()) base = ".";
  return parse_config(doc, fs::absolute(base).lexically_normal());
}

void validate_config(const PipelineConfig& c) {
  auto require_file = [](const fs::path& p, const char* what) {
    if (p.empty()) throw ConfigError(std::string("config: no ") + what + " path given");
    std::error_code ec;
    if (!fs::is_regular_file(p, ec)) {
      throw ConfigError(std::string("config: ") + what + " file does not exist: " + p.string());
    }
  };
  require_file(c.tweets, "tweets");
  require_file(c.antonyms, "antonyms");
  require_file(c.triples, "triples");
  if (c.pretrained_vectors) require_file(*c.pretrained_vectors, "pretrained_vectors");

  auto positive = [](int v, const char* what) {
    if (v < 1) throw ConfigError(std::string("config: ") + what + " must be positive");
  };
  positive(c.logodds.top_k, "logodds.top_k");
  positive(c.logodds.shared_top_k, "logodds.shared_top_k");
  positive(c.embedding.glove.dim, "embedding.dim");
  positive(c.embedding.glove.epochs, "embedding.epochs");
  positive(c.embedding.window, "embedding.window");
  if (c.embedding.min_count < 0) throw ConfigError("config: embedding.min_count must be >= 0");
  if (c.embedding.glove.dim < 2) throw ConfigError("config: embedding.dim must be at least 2");
  if (!(c.embedding.glove.x_max > 0) || !(c.embedding.glove.alpha > 0) ||
      !(c.embedding.glove.learning_rate > 0)) {
    throw ConfigError("config: embedding.x_max, alpha and learning_rate must be positive");
  }
  positive(c.projection.n_neighbors, "projection.n_neighbors");
  positive(c.projection.epochs, "projection.epochs");
  positive(c.projection.negative_sample_rate, "projection.negative_sample_rate");
  if (!(c.projection.min_dist >= 0) || !(c.projection.spread > 0)) {
    throw ConfigError("config: projection.min_dist must be >= 0 and spread > 0");
  }
  positive(c.frames.top_k, "frames.top_k");
  positive(c.frames.top_tweets, "frames.top_tweets");
  positive(c.roles.max_tokens, "roles.max_tokens");
  positive(c.roles.top_verbs, "roles.top_verbs");
  positive(c.roles.verb_clusters, "roles.verb_clusters");
  positive(c.roles.top_n, "roles.top_n");
  positive(c.roles.combinations_top_k, "roles.combinations_top_k");
  positive(c.roles.kmeans.restarts, "roles.kmeans_restarts");
  positive(c.roles.kmeans.max_iter, "roles.kmeans_max_iter");
  positive(c.roles.party_expansion_k, "roles.party_expansion_k");
  if (c.topic_keywords.empty()) throw ConfigError("config: topic_keywords must not be empty");
  for (const auto& [name, verbs] : c.roles.verb_sets) {
    if (verbs.empty()) throw ConfigError("config: verb set '" + name + "' is empty");
  }
}

json config_to_json(const PipelineConfig& c) {
  json j;
  j["inputs"] = {{"tweets", relative_to(c.base_dir, c.tweets)},
                 {"antonyms", relative_to(c.base_dir, c.antonyms)},
                 {"triples", relative_to(c.base_dir, c.triples)},
                 {"pretrained_vectors", c.pretrained_vectors
                                            ? json(relative_to(c.base_dir, *c.pretrained_vectors))
                                            : json(nullptr)}};
  j["topic_keywords"] = c.topic_keywords;
  j["logodds"] = {{"top_k", c.logodds.top_k},
                  {"shared_top_k", c.logodds.shared_top_k},
                  {"exclude_mentions", c.logodds.exclude_mentions},
                  {"exclusions", c.logodds.exclusions}};
  j["embedding"] = {{"dim", c.embedding.glove.dim},
                    {"epochs", c.embedding.glove.epochs},
                    {"x_max", c.embedding.glove.x_max},
                    {"alpha", c.embedding.glove.alpha},
                    {"learning_rate", c.embedding.glove.learning_rate},
                    {"seed", c.embedding.glove.seed},
                    {"window", c.embedding.window},
                    {"min_count", c.embedding.min_count}};
  j["projection"] = {{"n_neighbors", c.projection.n_neighbors},
                     {"min_dist", c.projection.min_dist},
                     {"spread", c.projection.spread},
                     {"epochs", c.projection.epochs},
                     {"seed", c.projection.seed},
                     {"negative_sample_rate", c.projection.negative_sample_rate}};
  j["frames"] = {{"top_k", c.frames.top_k},
                 {"top_tweets", c.frames.top_tweets},
                 {"stopwords", c.frames.stopwords}};
  const RolesConfig& r = c.roles;
  j["roles"] = {{"max_tokens", r.max_tokens},
                {"top_verbs", r.top_verbs},
                {"verb_clusters", r.verb_clusters},
                {"top_n", r.top_n},
                {"combinations_top_k", r.combinations_top_k},
                {"cluster_space", r.cluster_projected ? "projection" : "embedding"},
                {"kmeans_restarts", r.kmeans.restarts},
                {"kmeans_max_iter", r.kmeans.max_iter},
                {"seed", r.kmeans.seed},
                {"us_terms", r.us_terms},
                {"them_terms", r.them_terms},
                {"party_seeds", party_map(r.party_seeds)},
                {"party_expansion_k", r.party_expansion_k},
                {"party_terms", party_map(r.party_terms)},
                {"verb_sets", r.verb_sets},
                {"patient_merge", r.patient_merge}};
  return j;
}

std::string config_hash(const PipelineConfig& config) {
  return hex64(fnv1a64(config_to_json(config).dump()));
}

}  // namespace narraframe
