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

#ifndef NARRAFRAME_NARRATIVE_ROLES_HPP_
#define NARRAFRAME_NARRATIVE_ROLES_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "narraframe/corpus.hpp"

namespace narraframe {

// One predicate with its Agent (Arg0) and Patient (Arg1).
struct RoleTriple {
  std::string doc_id;
  Party party = Party::Unknown;
  int sentence_idx = 0;
  std::string verb;
  std::string verb_lemma;
  std::string agent;
  std::string patient;
  int agent_token_count = 0;
  int patient_token_count = 0;
};

enum class MembershipCategory { Us, Them, OtherParty, Other };
std::string_view category_name(MembershipCategory category);

struct TripleLoad {
  std::vector<RoleTriple> triples;
  std::size_t lines = 0;
  std::size_t invalid = 0;
};

// Line-delimited JSON records {doc_id, party, sentence_idx, verb,
// verb_lemma, agent, patient}. Text is lowercased and token counts come
// from whitespace splitting. Records lacking a field, with an empty role,
// or with an unknown party are skipped and counted.
TripleLoad load_triples(const std::filesystem::path& path);
TripleLoad parse_triples(std::string_view content);

inline constexpr int kDefaultMaxRoleTokens = 3;

// Keeps triples whose Agent and Patient both have at most max_tokens tokens.
std::vector<RoleTriple> filter_triples(const std::vector<RoleTriple>& triples,
                                       int max_tokens = kDefaultMaxRoleTokens);

struct Combination {
  std::string agent;
  std::string verb;
  std::string patient;
  auto operator<=>(const Combination&) const = default;
};

using CombinationCounts = std::map<Combination, std::int64_t>;

CombinationCounts combination_frequencies(const std::vector<RoleTriple>& triples);

struct CombinationDelta {
  Combination combination;
  std::int64_t count_a = 0;
  std::int64_t count_b = 0;
  std::int64_t difference = 0;  // in the list's direction
};

struct CombinationDeltas {
  std::vector<CombinationDelta> a_over_b;
  std::vector<CombinationDelta> b_over_a;
};

// Top-k combinations by count difference in each direction; ties by total
// count (descending) then lexicographically.
CombinationDeltas differential_combinations(const CombinationCounts& counts_a,
                                            const CombinationCounts& counts_b, int k);

struct Ranked {
  std::string item;
  std::int64_t count = 0;
  auto operator<=>(const Ranked&) const = default;
};

// Frequency-ranked items; ties lexicographic.
std::vector<Ranked> rank_counts(const std::map<std::string, std::int64_t>& counts, int n);

struct AgentsPatients {
  std::vector<Ranked> agents;
  std::vector<Ranked> patients;
};

AgentsPatients top_agents_patients(const std::vector<RoleTriple>& triples, int n);

// Term lists for us/them categorization. `other_party` is keyed by the
// party of the text's author: for a Democratic triple it holds the
// Republican terms, and vice versa.
struct MembershipLists {
  std::set<std::string, std::less<>> us;
  std::set<std::string, std::less<>> them;
  std::map<Party, std::vector<std::string>> other_party;

  static MembershipLists defaults();
};

// US if the agent equals a us-term, THEM if it equals a them-term,
// OTHER_PARTY if it contains an other-party term on token boundaries,
// OTHER otherwise.
MembershipCategory categorize(const RoleTriple& triple, const MembershipLists& lists);

struct TaggedTriple {
  RoleTriple triple;
  MembershipCategory category = MembershipCategory::Other;
};

std::vector<TaggedTriple> categorize_memberships(const std::vector<RoleTriple>& triples,
                                                 const MembershipLists& lists);

// Drops a leading "the", "a" or "an", then applies the merge map.
std::string merge_role(std::string_view role, const std::map<std::string, std::string>& merge);

// Top-n merged Patients per party among triples whose verb lemma is in
// `verbs` and whose Agent falls in `category`.
std::map<Party, std::vector<Ranked>> patients_for_verbset(
    const std::vector<RoleTriple>& triples, const std::set<std::string, std::less<>>& verbs,
    MembershipCategory category, int n, const MembershipLists& lists,
    const std::map<std::string, std::string>& merge = {});

inline constexpr int kDefaultTopVerbs = 100;

std::vector<Ranked> top_verbs(const std::vector<RoleTriple>& triples, int n = kDefaultTopVerbs);

std::vector<RoleTriple> triples_of_party(const std::vector<RoleTriple>& triples, Party party);

}  // namespace narraframe

#endif  // NARRAFRAME_NARRATIVE_ROLES_HPP_
