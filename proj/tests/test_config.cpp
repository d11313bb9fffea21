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

#include <string>

#include "doctest.h"
#include "json.hpp"
#include "narraframe/config.hpp"
#include "narraframe/error.hpp"
#include "narraframe/report.hpp"
#include "support.hpp"

using namespace narraframe;
using nlohmann::json;

TEST_SUITE("config") {
  TEST_CASE("defaults") {
    const PipelineConfig c = parse_config(json::object(), "/base");
    CHECK(c.logodds.top_k == 40);
    CHECK(c.frames.top_tweets == 3);
    CHECK(c.frames.top_k == 10);
    CHECK(c.frames.stopwords);
    CHECK(c.roles.top_verbs == 100);
    CHECK(c.roles.verb_clusters == 15);
    CHECK(c.roles.max_tokens == 3);
    CHECK(c.embedding.glove.dim == 300);
    CHECK(c.embedding.glove.epochs == 500);
    CHECK(c.embedding.window == 10);
    CHECK(c.projection.n_neighbors == 15);
    CHECK(c.projection.min_dist == 0.1);
    CHECK(c.roles.kmeans.restarts == 10);
    CHECK(c.roles.us_terms.count("we") == 1);
    CHECK(c.roles.them_terms.count("they") == 1);
  }

  TEST_CASE("unknown keys and wrong types are rejected") {
    CHECK_THROWS_AS(parse_config(json{{"bogus", 1}}, "/base"), ConfigError);
    CHECK_THROWS_AS(parse_config(json{{"logodds", {{"topk", 5}}}}, "/base"), ConfigError);
    CHECK_THROWS_AS(parse_config(json{{"logodds", {{"top_k", "five"}}}}, "/base"), ConfigError);
    CHECK_THROWS_AS(parse_config(json{{"roles", {{"cluster_space", "cube"}}}}, "/base"), ConfigError);
    CHECK_THROWS_AS(parse_config(json{{"roles", {{"party_terms", {{"Q", {"x"}}}}}}}, "/base"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
  }

  TEST_CASE("relative paths resolve against the config directory") {
    const PipelineConfig c = parse_config(
        json{{"inputs", {{"tweets", "data/t.jsonl"}, {"antonyms", "/abs/a.tsv"}}}, {"output_dir", "out"}},
        "/base/dir");
    CHECK(c.tweets == std::filesystem::path("/base/dir/data/t.jsonl"));
    CHECK(c.antonyms == std::filesystem::path("/abs/a.tsv"));
    CHECK(c.output_dir == std::filesystem::path("/base/dir/out"));
    CHECK_FALSE(c.cache_dir.has_value());
  }

  TEST_CASE("fixture config loads and validates") {
    const PipelineConfig c = load_config(test::data("fixture_config.json"));
    CHECK_NOTHROW(validate_config(c));
    CHECK(c.embedding.glove.dim == 50);
    CHECK(c.tweets == test::data("tweets.jsonl").lexically_normal());
  }

  TEST_CASE("validation") {
    PipelineConfig c = load_config(test::data("fixture_config.json"));
    PipelineConfig bad = c;
    bad.tweets = test::data("missing.jsonl");
    CHECK_THROWS_AS(validate_config(bad), ConfigError);
    bad = c;
    bad.logodds.top_k = 0;
    CHECK_THROWS_AS(validate_config(bad), ConfigError);
    bad = c;
    bad.embedding.glove.dim = 1;
    CHECK_THROWS_AS(validate_config(bad), ConfigError);
    bad = c;
    bad.topic_keywords.clear();
    CHECK_THROWS_AS(validate_config(bad), ConfigError);
    bad = c;
    bad.roles.verb_sets["empty"] = {};
    CHECK_THROWS_AS(validate_config(bad), ConfigError);
  }

  TEST_CASE("hash is stable and sensitive") {
    const PipelineConfig a = load_config(test::data("fixture_config.json"));
    const PipelineConfig b = parse_config(config_to_json(a), a.base_dir);
    CHECK(config_hash(a) == config_hash(b));
    CHECK(config_hash(a).size() == 16);
    CHECK(config_to_json(a) == config_to_json(b));
    PipelineConfig c = a;
    c.embedding.glove.seed += 1;
    CHECK(config_hash(c) != config_hash(a));
    // Output location does not change what is computed.
    c = a;
    c.output_dir = "/elsewhere";
    CHECK(config_hash(c) == config_hash(a));
  }
}
