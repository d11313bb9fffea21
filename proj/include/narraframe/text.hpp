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

#ifndef NARRAFRAME_TEXT_HPP_
#define NARRAFRAME_TEXT_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace narraframe {

// Lowercases UTF-8 text. Covers ASCII, Latin-1, Latin Extended-A, Greek and
// Cyrillic; other code points pass through unchanged. Invalid bytes are
// replaced with U+FFFD.
std::string utf8_lower(std::string_view text);

// Splits tweet text into lowercase tokens.
//
//  - URLs (http://, https://, www.) are dropped.
//  - Emoji, symbols and punctuation are dropped.
//  - '#hashtag' and '@mention' survive as single tokens.
//  - Hyphens, apostrophes and underscores inside a word are kept, so
//    "COVID-19" becomes "covid-19".
//
// Tokenizing the space-joined output reproduces the output.
std::vector<std::string> tokenize(std::string_view text);

// Whitespace split, used for role-phrase token counts.
std::vector<std::string> split_whitespace(std::string_view text);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

// Case-insensitive (UTF-8 lowercased) substring test.
bool contains_ci(std::string_view haystack, std::string_view needle);

}  // namespace narraframe

#endif  // NARRAFRAME_TEXT_HPP_
