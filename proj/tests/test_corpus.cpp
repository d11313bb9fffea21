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

#include <fstream>
#include <map>
#include <set>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "narraframe/corpus.hpp"
#include "narraframe/error.hpp"
#include "support.hpp"

using namespace narraframe;

namespace {

std::string record(const std::string& id, const std::string& party, const std::string& lang,
                   const std::string& text) {
  nlohmann::json j = {{"id", id},     {"author", "a"}, {"party", party},
                      {"chamber", "house"}, {"timestamp", "2020-03-01T00:00:00Z"},
                      {"lang", lang}, {"text", text},  {"is_retweet", false}};
  return j.dump() + "\n";
}

}  // namespace

TEST_SUITE("corpus") {
  TEST_CASE("three English records") {
    const auto r = ingest_tweets_from_string(
        record("1", "D", "en", "a") + record("2", "R", "en", "b") + record("3", "D", "en", "c"), "t");
    CHECK(r.corpus.size() == 3);
    CHECK(r.lines == 3);
    CHECK(r.malformed == 0);
  }

  TEST_CASE("non-English record filtered") {
    const auto r = ingest_tweets_from_string(
        record("1", "D", "en", "a") + record("2", "R", "fr", "b") + record("3", "D", "en-GB", "c"),
        "t");
    CHECK(r.corpus.size() == 2);
    CHECK(r.non_english == 1);
  }

  TEST_CASE("malformed lines and duplicates are counted") {
    const std::string content = record("1", "D", "en", "covid now") + "{broken\n" +
                                "{\"id\": \"2\", \"lang\": \"en\"}\n" + "\n" +
                                record("1", "D", "en", "again") +
                                "{\"id\":\"9\",\"author\":\"x\",\"party\":\"R\",\"timestamp\":\"t\","
                                "\"lang\":\"en\",\"text\":\"hi\",\"extra\":[1,2]}\n";
    const auto r = ingest_tweets_from_string(content, "t");
    CHECK(r.lines == 5);
    CHECK(r.malformed == 2);
    CHECK(r.duplicate_ids == 1);
    REQUIRE(r.corpus.size() == 2);
    CHECK(r.corpus.docs()[0].tokens == std::vector<std::string>{"covid", "now"});
    CHECK(r.corpus.docs()[1].chamber == Chamber::Other);
  }

  TEST_CASE("no valid record is an error") {
    CHECK_THROWS_AS(ingest_tweets_from_string("{bad\n", "t"), IoError);
    CHECK_THROWS_AS(ingest_tweets_from_string(record("1", "D", "fr", "a"), "t"), IoError);
    CHECK_THROWS_AS(ingest_tweets("/nonexistent/tweets.jsonl"), IoError);
  }

  TEST_CASE("normalize topic tokens") {
    const std::vector<std::string> kw = {"covid", "coronavirus"};
    using T = std::vector<std::string>;
    CHECK(normalize_topic_tokens(T{"covid-19", "testing"}, kw) == T{"covid", "testing"});
    CHECK(normalize_topic_tokens(T{"coronavirusupdate"}, kw) == T{"covid"});
    CHECK(normalize_topic_tokens(T{"corona"}, kw) == T{"corona"});
    CHECK(normalize_topic_tokens(T{"#COVID19"}, kw) == T{"covid"});
  }

  TEST_CASE("filter topic") {
    const CorpusPartition c("all", {test::doc("1", "The CoViD crisis"), test::doc("2", "Happy birthday"),
                                    test::doc("3", "#coronavirusupdate today")});
    const TopicSplit split = filter_topic(c, {"covid", "coronavirus"});
    REQUIRE(split.topical.size() == 2);
    REQUIRE(split.background.size() == 1);
    CHECK(split.background.docs()[0].id == "2");
  }

  TEST_CASE("partition by party") {
    const CorpusPartition c("all", {test::doc("1", "a", Party::D), test::doc("2", "b", Party::D),
                                    test::doc("3", "c", Party::R), test::doc("4", "d", Party::Unknown)});
    const PartySplit split = partition_by_party(c);
    CHECK(split.parts.at(Party::D).size() == 2);
    CHECK(split.parts.at(Party::R).size() == 1);
    CHECK(split.excluded == 1);

    const PartySplit empty = partition_by_party(CorpusPartition("none", {}));
    CHECK(empty.parts.at(Party::D).empty());
    CHECK(empty.parts.at(Party::R).empty());
  }

  TEST_CASE("party tags") {
    CHECK(parse_party("D") == Party::D);
    CHECK(parse_party("republican") == Party::R);
    CHECK(parse_party("I") == Party::Unknown);
    CHECK(party_name(Party::R) == "R");
  }

  TEST_CASE("term statistics") {
    const CorpusPartition c = test::partition("p", {{"a", "b", "a"}, {"c"}, {}});
    CHECK(c.total_tokens() == 4);
    CHECK(c.count("a") == 2);
    CHECK(c.count("zzz") == 0);
    const CorpusPartition m = merge_partitions("m", {&c, &c});
    CHECK(m.size() == 6);
    CHECK(m.count("a") == 4);
  }

  TEST_CASE("fixture party counts match the raw file") {
    const auto r = ingest_tweets(test::data("tweets.jsonl"));
    // Independent recount straight from the lines.
    std::ifstream in(test::data("tweets.jsonl"));
    std::string line;
    std::set<std::string> seen;
    std::map<std::string, std::size_t> party;
    std::size_t lines = 0;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      ++lines;
      auto j = nlohmann::json::parse(line, nullptr, false);
      if (!j.is_object()) continue;
      bool ok = true;
      for (const char* k : {"id", "author", "party", "timestamp", "lang", "text"}) {
        ok = ok && j.contains(k) && j[k].is_string();
      }
      if (!ok || j["id"].get<std::string>().empty()) continue;
      if (j["lang"].get<std::string>().substr(0, 2) != "en") continue;
      if (!seen.insert(j["id"].get<std::string>()).second) continue;
      party[j["party"].get<std::string>()] += 1;
    }
    CHECK(r.lines == lines);
    const PartySplit split = partition_by_party(r.corpus);
    CHECK(split.parts.at(Party::D).size() == party["D"]);
    CHECK(split.parts.at(Party::R).size() == party["R"]);
    CHECK(split.excluded == party["I"]);
    CHECK(r.corpus.size() == party["D"] + party["R"] + party["I"]);
  }
}
