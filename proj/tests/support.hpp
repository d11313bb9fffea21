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

// Small builders shared by the unit tests.

#ifndef NARRAFRAME_TESTS_SUPPORT_HPP_
#define NARRAFRAME_TESTS_SUPPORT_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "narraframe/corpus.hpp"
#include "narraframe/text.hpp"

namespace test {

inline narraframe::Document doc(std::string id, std::string text,
                                narraframe::Party party = narraframe::Party::D) {
  narraframe::Document d;
  d.id = std::move(id);
  d.author = "someone";
  d.party = party;
  d.lang = "en";
  d.text = std::move(text);
  d.tokens = narraframe::tokenize(d.text);
  return d;
}

// Document with tokens given verbatim (no tokenizer involved).
inline narraframe::Document raw(std::string id, std::vector<std::string> tokens,
                                narraframe::Party party = narraframe::Party::D) {
  narraframe::Document d;
  d.id = std::move(id);
  d.party = party;
  d.lang = "en";
  d.text = narraframe::join(tokens, " ");
  d.tokens = std::move(tokens);
  return d;
}

inline narraframe::CorpusPartition partition(
    std::string name, const std::vector<std::vector<std::string>>& docs) {
  std::vector<narraframe::Document> out;
  for (size_t i = 0; i < docs.size(); ++i) out.push_back(raw(name + std::to_string(i), docs[i]));
  return narraframe::CorpusPartition(std::move(name), std::move(out));
}

inline std::filesystem::path data(const std::string& name) {
  return std::filesystem::path(NARRAFRAME_TEST_DATA) / name;
}

// Fresh, empty scratch directory under the system temp dir.
inline std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("narraframe-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace test

#endif  // NARRAFRAME_TESTS_SUPPORT_HPP_
