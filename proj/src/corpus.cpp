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

#include "narraframe/corpus.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include "json.hpp"
#include "narraframe/error.hpp"
#include "narraframe/text.hpp"

namespace narraframe {

using json = nlohmann::json;

Party parse_party(std::string_view text) {
  const std::string p = utf8_lower(text);
  if (p == "d" || p == "dem" || p == "democrat" || p == "democratic") return Party::D;
  if (p == "r" || p == "rep" || p == "republican") return Party::R;
  return Party::Unknown;
}

std::string_view party_name(Party party) {
  switch (party) {
    case Party::D: return "D";
    case Party::R: return "R";
    default: return "?";
  }
}

Chamber parse_chamber(std::string_view text) {
  const std::string c = utf8_lower(text);
  if (c == "senate") return Chamber::Senate;
  if (c == "house") return Chamber::House;
  if (c == "governor") return Chamber::Governor;
  if (c == "president") return Chamber::President;
  return Chamber::Other;
}

CorpusPartition::CorpusPartition(std::string name, std::vector<Document> docs)
    : name_(std::move(name)), docs_(std::move(docs)) {
  for (const Document& doc : docs_) {
    for (const std::string& token : doc.tokens) ++term_counts_[token];
    total_tokens_ += static_cast<std::int64_t>(doc.tokens.size());
  }
}

std::int64_t CorpusPartition::count(std::string_view token) const {
  auto it = term_counts_.find(token);
  return it == term_counts_.end() ? 0 : it->second;
}

namespace {

const json* string_field(const json& record, const char* key) {
  auto it = record.find(key);
  if (it == record.end() || !it->is_string()) return nullptr;
  return &*it;
}

}  // namespace

IngestReport ingest_tweets_from_string(std::string_view content, std::string_view source) {
  IngestReport report;
  std::vector<Document> docs;
  std::unordered_set<std::string> seen;

  std::istringstream in{std::string(content)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    ++report.lines;

    json record = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (!record.is_object()) {
      ++report.malformed;
      continue;
    }
    const json* id = string_field(record, "id");
    const json* author = string_field(record, "author");
    const json* party = string_field(record, "party");
    const json* timestamp = string_field(record, "timestamp");
    const json* lang = string_field(record, "lang");
    const json* text = string_field(record, "text");
    if (!id || !author || !party || !timestamp || !lang || !text ||
        id->get_ref<const std::string&>().empty()) {
      ++report.malformed;
      continue;
    }
    const std::string lang_tag = utf8_lower(lang->get_ref<const std::string&>());
    if (lang_tag.rfind("en", 0) != 0) {
      ++report.non_english;
      continue;
    }
    if (!seen.insert(id->get<std::string>()).second) {
      ++report.duplicate_ids;
      continue;
    }

    Document doc;
    doc.id = id->get<std::string>();
    doc.author = author->get<std::string>();
    doc.party = parse_party(party->get_ref<const std::string&>());
    if (const json* chamber = string_field(record, "chamber")) {
      doc.chamber = parse_chamber(chamber->get_ref<const std::string&>());
    }
    doc.timestamp = timestamp->get<std::string>();
    doc.lang = lang->get<std::string>();
    doc.text = text->get<std::string>();
    if (auto rt = record.find("is_retweet"); rt != record.end() && rt->is_boolean()) {
      doc.is_retweet = rt->get<bool>();
    }
    doc.tokens = tokenize(doc.text);
    docs.push_back(std::move(doc));
  }

  if (docs.empty()) {
    throw IoError("no valid English tweet records in " + std::string(source));
  }
  report.corpus = CorpusPartition("all", std::move(docs));
  return report;
}

IngestReport ingest_tweets(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read tweet file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ingest_tweets_from_string(buffer.str(), path.string());
}

std::vector<std::string> normalize_topic_tokens(const std::vector<std::string>& tokens,
                                                const std::vector<std::string>& keywords) {
  std::vector<std::string> lowered;
  lowered.reserve(keywords.size());
  for (const auto& k : keywords) lowered.push_back(utf8_lower(k));

  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const std::string& token : tokens) {
    const std::string t = utf8_lower(token);
    bool hit = false;
    for (const auto& k : lowered) {
      if (!k.empty() && t.find(k) != std::string::npos) {
        hit = true;
        break;
      }
    }
    out.push_back(hit ? std::string(kCanonicalTopicToken) : token);
  }
  return out;
}

CorpusPartition normalize_topic_tokens(const CorpusPartition& corpus,
                                       const std::vector<std::string>& keywords) {
  std::vector<Document> docs = corpus.docs();
  for (Document& doc : docs) doc.tokens = normalize_topic_tokens(doc.tokens, keywords);
  return CorpusPartition(corpus.name(), std::move(docs));
}

TopicSplit filter_topic(const CorpusPartition& corpus, const std::vector<std::string>& keywords) {
  std::vector<std::string> lowered;
  for (const auto& k : keywords) {
    if (!k.empty()) lowered.push_back(utf8_lower(k));
  }
  std::vector<Document> topical;
  std::vector<Document> background;
  for (const Document& doc : corpus.docs()) {
    const std::string text = utf8_lower(doc.text);
    bool hit = false;
    for (const auto& k : lowered) {
      if (text.find(k) != std::string::npos) {
        hit = true;
        break;
      }
    }
    (hit ? topical : background).push_back(doc);
  }
  return {CorpusPartition(corpus.name() + "/topical", std::move(topical)),
          CorpusPartition(corpus.name() + "/background", std::move(background))};
}

PartySplit partition_by_party(const CorpusPartition& corpus) {
  std::vector<Document> dem;
  std::vector<Document> rep;
  PartySplit split;
  for (const Document& doc : corpus.docs()) {
    if (doc.party == Party::D) {
      dem.push_back(doc);
    } else if (doc.party == Party::R) {
      rep.push_back(doc);
    } else {
      ++split.excluded;
    }
  }
  split.parts.emplace(Party::D, CorpusPartition(corpus.name() + "/D", std::move(dem)));
  split.parts.emplace(Party::R, CorpusPartition(corpus.name() + "/R", std::move(rep)));
  return split;
}

CorpusPartition merge_partitions(std::string name,
                                 const std::vector<const CorpusPartition*>& parts) {
  std::vector<Document> docs;
  for (const CorpusPartition* part : parts) {
    docs.insert(docs.end(), part->docs().begin(), part->docs().end());
  }
  return CorpusPartition(std::move(name), std::move(docs));
}

}  // namespace narraframe
