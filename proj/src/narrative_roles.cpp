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

#include "narraframe/narrative_roles.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include "json.hpp"
#include "narraframe/error.hpp"
#include "narraframe/text.hpp"

namespace narraframe {

using json = nlohmann::json;

std::string_view category_name(MembershipCategory category) {
  switch (category) {
    case MembershipCategory::Us: return "US";
    case MembershipCategory::Them: return "THEM";
    case MembershipCategory::OtherParty: return "OTHER_PARTY";
    default: return "OTHER";
  }
}

namespace {

// Lowercased, whitespace-normalized text of a nonempty string field.
std::optional<std::string> role_text(const json& record, const char* key) {
  auto it = record.find(key);
  if (it == record.end() || !it->is_string()) return std::nullopt;
  std::string text = join(split_whitespace(utf8_lower(it->get_ref<const std::string&>())), " ");
  if (text.empty()) return std::nullopt;
  return text;
}

}  // namespace

TripleLoad parse_triples(std::string_view content) {
  TripleLoad load;
  std::istringstream in{std::string(content)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    ++load.lines;
    const json record = json::parse(line, nullptr, false);
    if (!record.is_object()) {
      ++load.invalid;
      continue;
    }
    auto doc_id = record.find("doc_id");
    auto party = record.find("party");
    auto verb = role_text(record, "verb");
    auto lemma = role_text(record, "verb_lemma");
    auto agent = role_text(record, "agent");
    auto patient = role_text(record, "patient");
    if (doc_id == record.end() || !doc_id->is_string() || doc_id->get_ref<const std::string&>().empty() ||
        party == record.end() || !party->is_string() || !verb || !lemma || !agent || !patient) {
      ++load.invalid;
      continue;
    }
    RoleTriple t;
    t.doc_id = doc_id->get<std::string>();
    t.party = parse_party(party->get_ref<const std::string&>());
    if (t.party == Party::Unknown) {
      ++load.invalid;
      continue;
    }
    if (auto idx = record.find("sentence_idx"); idx != record.end()) {
      if (!idx->is_number_integer()) {
        ++load.invalid;
        continue;
      }
      t.sentence_idx = idx->get<int>();
    }
    t.verb = std::move(*verb);
    t.verb_lemma = std::move(*lemma);
    t.agent = std::move(*agent);
    t.patient = std::move(*patient);
    t.agent_token_count = static_cast<int>(split_whitespace(t.agent).size());
    t.patient_token_count = static_cast<int>(split_whitespace(t.patient).size());
    load.triples.push_back(std::move(t));
  }
  return load;
}

TripleLoad load_triples(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read triple file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_triples(buffer.str());
}

std::vector<RoleTriple> filter_triples(const std::vector<RoleTriple>& triples, int max_tokens) {
  std::vector<RoleTriple> kept;
  std::copy_if(triples.begin(), triples.end(), std::back_inserter(kept), [&](const RoleTriple& t) {
    return t.agent_token_count <= max_tokens && t.patient_token_count <= max_tokens;
  });
  return kept;
}

CombinationCounts combination_frequencies(const std::vector<RoleTriple>& triples) {
  CombinationCounts counts;
  for (const RoleTriple& t : triples) ++counts[{t.agent, t.verb_lemma, t.patient}];
  return counts;
}

CombinationDeltas differential_combinations(const CombinationCounts& counts_a,
                                            const CombinationCounts& counts_b, int k) {
  if (k < 1) throw Error("differential_combinations: k must be positive");
  std::map<Combination, std::pair<std::int64_t, std::int64_t>> joint;
  for (const auto& [c, n] : counts_a) joint[c].first = n;
  for (const auto& [c, n] : counts_b) joint[c].second = n;

  auto ranked = [&](bool a_first) {
    std::vector<CombinationDelta> rows;
    rows.reserve(joint.size());
    for (const auto& [c, n] : joint) {
      rows.push_back({c, n.first, n.second, a_first ? n.first - n.second : n.second - n.first});
    }
    std::sort(rows.begin(), rows.end(), [](const CombinationDelta& x, const CombinationDelta& y) {
      if (x.difference != y.difference) return x.difference > y.difference;
      const auto tx = x.count_a + x.count_b;
      const auto ty = y.count_a + y.count_b;
      if (tx != ty) return tx > ty;
      return x.combination < y.combination;
    });
    if (static_cast<int>(rows.size()) > k) rows.resize(static_cast<size_t>(k));
    return rows;
  };
  return {ranked(true), ranked(false)};
}

std::vector<Ranked> rank_counts(const std::map<std::string, std::int64_t>& counts, int n) {
  std::vector<Ranked> rows;
  rows.reserve(counts.size());
  for (const auto& [item, count] : counts) rows.push_back({item, count});
  std::stable_sort(rows.begin(), rows.end(),
                   [](const Ranked& a, const Ranked& b) { return a.count > b.count; });
  if (n >= 0 && static_cast<int>(rows.size()) > n) rows.resize(static_cast<size_t>(n));
  return rows;
}

AgentsPatients top_agents_patients(const std::vector<RoleTriple>& triples, int n) {
  if (n < 1) throw Error("top_agents_patients: n must be positive");
  std::map<std::string, std::int64_t> agents;
  std::map<std::string, std::int64_t> patients;
  for (const RoleTriple& t : triples) {
    ++agents[t.agent];
    ++patients[t.patient];
  }
  return {rank_counts(agents, n), rank_counts(patients, n)};
}

MembershipLists MembershipLists::defaults() {
  MembershipLists lists;
  lists.us = {"i", "we", "us", "our", "ours"};
  lists.them = {"they", "their", "them"};
  return lists;
}

namespace {

// True when `phrase` occurs in `text` aligned to space-separated tokens.
bool contains_phrase(std::string_view text, std::string_view phrase) {
  if (phrase.empty()) return false;
  size_t pos = text.find(phrase);
  while (pos != std::string_view::npos) {
    const bool left = pos == 0 || text[pos - 1] == ' ';
    const size_t end = pos + phrase.size();
    const bool right = end == text.size() || text[end] == ' ';
    if (left && right) return true;
    pos = text.find(phrase, pos + 1);
  }
  return false;
}

}  // namespace

MembershipCategory categorize(const RoleTriple& triple, const MembershipLists& lists) {
  if (lists.us.count(triple.agent)) return MembershipCategory::Us;
  if (lists.them.count(triple.agent)) return MembershipCategory::Them;
  if (auto it = lists.other_party.find(triple.party); it != lists.other_party.end()) {
    for (const std::string& term : it->second) {
      if (contains_phrase(triple.agent, term)) return MembershipCategory::OtherParty;
    }
  }
  return MembershipCategory::Other;
}

std::vector<TaggedTriple> categorize_memberships(const std::vector<RoleTriple>& triples,
                                                 const MembershipLists& lists) {
  std::vector<TaggedTriple> tagged;
  tagged.reserve(triples.size());
  for (const RoleTriple& t : triples) tagged.push_back({t, categorize(t, lists)});
  return tagged;
}

std::string merge_role(std::string_view role, const std::map<std::string, std::string>& merge) {
  std::vector<std::string> words = split_whitespace(role);
  if (words.size() > 1 && (words[0] == "the" || words[0] == "a" || words[0] == "an")) {
    words.erase(words.begin());
  }
  std::string key = join(words, " ");
  if (auto it = merge.find(key); it != merge.end()) return it->second;
  return key;
}

std::map<Party, std::vector<Ranked>> patients_for_verbset(
    const std::vector<RoleTriple>& triples, const std::set<std::string, std::less<>>& verbs,
    MembershipCategory category, int n, const MembershipLists& lists,
    const std::map<std::string, std::string>& merge) {
  if (n < 1) throw Error("patients_for_verbset: n must be positive");
  std::map<Party, std::map<std::string, std::int64_t>> counts;
  for (const RoleTriple& t : triples) {
    if (!verbs.count(t.verb_lemma)) continue;
    if (categorize(t, lists) != category) continue;
    ++counts[t.party][merge_role(t.patient, merge)];
  }
  std::map<Party, std::vector<Ranked>> out;
  for (const auto& [party, c] : counts) out[party] = rank_counts(c, n);
  return out;
}

std::vector<Ranked> top_verbs(const std::vector<RoleTriple>& triples, int n) {
  if (n < 1) throw Error("top_verbs: n must be positive");
  std::map<std::string, std::int64_t> counts;
  for (const RoleTriple& t : triples) ++counts[t.verb_lemma];
  return rank_counts(counts, n);
}

std::vector<RoleTriple> triples_of_party(const std::vector<RoleTriple>& triples, Party party) {
  std::vector<RoleTriple> out;
  std::copy_if(triples.begin(), triples.end(), std::back_inserter(out),
               [party](const RoleTriple& t) { return t.party == party; });
  return out;
}

}  // namespace narraframe
