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

#ifndef NARRAFRAME_CORPUS_HPP_
#define NARRAFRAME_CORPUS_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace narraframe {

enum class Party { D, R, Unknown };
enum class Chamber { Senate, House, Governor, President, Other };

// "D"/"R" (also "democrat"/"republican", any case); anything else is Unknown.
Party parse_party(std::string_view text);
std::string_view party_name(Party party);
Chamber parse_chamber(std::string_view text);

struct Document {
  std::string id;
  std::string author;
  Party party = Party::Unknown;
  Chamber chamber = Chamber::Other;
  std::string timestamp;
  std::string lang;
  std::string text;
  bool is_retweet = false;
  std::vector<std::string> tokens;
};

using TermCounts = std::map<std::string, std::int64_t, std::less<>>;

// A named, immutable bag of documents with cached term statistics.
class CorpusPartition {
 public:
  CorpusPartition() = default;
  CorpusPartition(std::string name, std::vector<Document> docs);

  const std::string& name() const { return name_; }
  const std::vector<Document>& docs() const { return docs_; }
  const TermCounts& term_counts() const { return term_counts_; }
  std::int64_t total_tokens() const { return total_tokens_; }
  std::size_t size() const { return docs_.size(); }
  bool empty() const { return docs_.empty(); }

  // Frequency of a token, 0 when absent.
  std::int64_t count(std::string_view token) const;

 private:
  std::string name_;
  std::vector<Document> docs_;
  TermCounts term_counts_;
  std::int64_t total_tokens_ = 0;
};

struct IngestReport {
  CorpusPartition corpus;
  std::size_t lines = 0;
  std::size_t malformed = 0;      // unparsable JSON or missing required fields
  std::size_t non_english = 0;
  std::size_t duplicate_ids = 0;
};

// Reads line-delimited tweet records and keeps the English ones.
// Throws IoError when the file cannot be read or yields no valid record.
IngestReport ingest_tweets(const std::filesystem::path& path);

// Same, from an in-memory buffer. `source` names the input in messages.
IngestReport ingest_tweets_from_string(std::string_view content, std::string_view source);

// Replaces every token containing one of `keywords` (case-insensitive
// substring) by the canonical token "covid".
inline constexpr std::string_view kCanonicalTopicToken = "covid";
std::vector<std::string> normalize_topic_tokens(const std::vector<std::string>& tokens,
                                                const std::vector<std::string>& keywords);
CorpusPartition normalize_topic_tokens(const CorpusPartition& corpus,
                                       const std::vector<std::string>& keywords);

struct TopicSplit {
  CorpusPartition topical;
  CorpusPartition background;
};

// A document is topical iff its raw text contains a keyword, ignoring case.
TopicSplit filter_topic(const CorpusPartition& corpus, const std::vector<std::string>& keywords);

struct PartySplit {
  std::map<Party, CorpusPartition> parts;  // always holds D and R
  std::size_t excluded = 0;                // documents of unknown party
};

PartySplit partition_by_party(const CorpusPartition& corpus);

// Union of partitions under a new name.
CorpusPartition merge_partitions(std::string name, const std::vector<const CorpusPartition*>& parts);

}  // namespace narraframe

#endif  // NARRAFRAME_CORPUS_HPP_
