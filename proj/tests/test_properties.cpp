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

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "narraframe/corpus.hpp"
#include "narraframe/embedding.hpp"
#include "narraframe/frameaxis.hpp"
#include "narraframe/narrative_roles.hpp"
#include "narraframe/overrepresentation.hpp"
#include "narraframe/text.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace narraframe;

namespace {

using Docs = std::vector<std::vector<std::string>>;

Docs random_docs(std::mt19937_64& gen, int n_docs, int vocab, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> word(0, vocab - 1);
  Docs docs(static_cast<size_t>(n_docs));
  for (auto& d : docs) {
    const int n = len(gen);
    for (int i = 0; i < n; ++i) d.push_back("w" + std::to_string(word(gen)));
  }
  return docs;
}

std::string random_text(std::mt19937_64& gen) {
  static const std::vector<std::string> pieces = {
      "Covid", "#StayHome", "@POTUS", "https://t.co/abc", "don’t", "\u2014", "!!", "COVID-19", "😷",
      "rt", "  ", "\t", "ÉCOLE", "state's", "--", "a-b-c", "#", "@", "100%", ",", "Привет"};
  std::uniform_int_distribution<size_t> pick(0, pieces.size() - 1);
  std::uniform_int_distribution<int> len(0, 12);
  std::string s;
  for (int i = len(gen); i > 0; --i) s += pieces[pick(gen)] + (i % 3 ? " " : "");
  return s;
}

EmbeddingModel random_model(std::mt19937_64& gen, int vocab, int dim) {
  std::normal_distribution<double> g;
  std::vector<std::string> tokens;
  Eigen::MatrixXd m(vocab, dim);
  for (int i = 0; i < vocab; ++i) {
    tokens.push_back("w" + std::to_string(i));
    for (int d = 0; d < dim; ++d) m(i, d) = g(gen);
  }
  return EmbeddingModel(tokens, m);
}

}  // namespace

TEST_SUITE("properties") {
  TEST_CASE("tokenizer is idempotent") {
    std::mt19937_64 gen(1);
    for (int i = 0; i < 300; ++i) {
      const std::string text = random_text(gen);
      CAPTURE(text);
      const auto once = tokenize(text);
      CHECK(tokenize(join(once, " ")) == once);
      for (const auto& t : once) CHECK(utf8_lower(t) == t);
    }
  }

  TEST_CASE("topic normalization is idempotent and length-preserving") {
    std::mt19937_64 gen(2);
    const std::vector<std::string> kw = {"covid", "coronavirus"};
    for (int i = 0; i < 200; ++i) {
      const auto tokens = tokenize(random_text(gen) + " coronavirusupdate covid19");
      const auto once = normalize_topic_tokens(tokens, kw);
      CHECK(once.size() == tokens.size());
      CHECK(normalize_topic_tokens(once, kw) == once);
    }
  }

  TEST_CASE("topic filter partitions the corpus") {
    std::mt19937_64 gen(3);
    std::vector<Document> docs;
    for (int i = 0; i < 200; ++i) docs.push_back(test::doc(std::to_string(i), random_text(gen)));
    const CorpusPartition all("all", docs);
    const TopicSplit split = filter_topic(all, {"covid"});
    CHECK(split.topical.size() + split.background.size() == all.size());
    CHECK(split.topical.total_tokens() + split.background.total_tokens() == all.total_tokens());
    for (const Document& d : split.topical.docs()) CHECK(contains_ci(d.text, "covid"));
    for (const Document& d : split.background.docs()) CHECK_FALSE(contains_ci(d.text, "covid"));
  }

  TEST_CASE("token totals recount") {
    std::mt19937_64 gen(4);
    for (int i = 0; i < 50; ++i) {
      const Docs docs = random_docs(gen, 10, 15, 12);
      const CorpusPartition p = test::partition("p", docs);
      const auto bag = oracle::count(docs);
      CHECK(p.total_tokens() == oracle::total(bag));
      for (const auto& [t, n] : bag) CHECK(p.count(t) == n);
    }
  }

  TEST_CASE("log-odds agrees with direct evaluation and is antisymmetric") {
    std::mt19937_64 gen(5);
    for (int trial = 0; trial < 60; ++trial) {
      const Docs di = random_docs(gen, 5, 20, 15), dj = random_docs(gen, 5, 20, 15),
                 db = random_docs(gen, 8, 25, 15);
      const CorpusPartition i = test::partition("i", di), j = test::partition("j", dj),
                            bg = test::partition("bg", db);
      if (bg.total_tokens() == 0) continue;
      const auto ci = oracle::count(di), cj = oracle::count(dj), cb = oracle::count(db);
      const double ni = oracle::total(ci), nj = oracle::total(cj), nb = oracle::total(cb);
      const LogOddsResult r = log_odds(i, j, bg);
      const LogOddsResult back = log_odds(j, i, bg);
      REQUIRE(r.terms.size() == back.terms.size());
      for (size_t k = 0; k < r.terms.size(); ++k) {
        const TermStat& t = r.terms[k];
        auto get = [&](const oracle::Bag& b) { return b.count(t.token) ? b.at(t.token) : 0L; };
        const auto o = oracle::log_odds(get(ci), ni, get(cj), nj, get(cb), nb);
        CHECK(std::abs(t.s - o.s) <= 1e-10);
        CHECK(std::abs(t.z - o.z) <= 1e-10);
        CHECK(std::abs(t.s + back.terms[k].s) <= 1e-12);
      }
    }
  }

  TEST_CASE("log-odds grows with the term's own count") {
    for (int f = 1; f < 15; ++f) {
      const auto a = oracle::log_odds(f, 100, 3, 100, 2, 200);
      const auto b = oracle::log_odds(f + 1, 100, 3, 100, 2, 200);
      CHECK(b.s > a.s);
    }
    // Same property through the library.
    double previous = -1e9;
    for (int f = 1; f < 10; ++f) {
      std::vector<std::string> tokens(static_cast<size_t>(f), "w");
      tokens.resize(20, "pad");
      const auto r = log_odds(test::partition("i", {tokens}), test::partition("j", {{"w", "pad"}}),
                              test::partition("bg", {{"w", "pad", "pad"}}));
      for (const auto& t : r.terms)
        if (t.token == "w") {
          CHECK(t.s > previous);
          previous = t.s;
        }
    }
  }

  TEST_CASE("co-occurrence is symmetric and exact") {
    std::mt19937_64 gen(6);
    for (int trial = 0; trial < 30; ++trial) {
      const Docs docs = random_docs(gen, 6, 12, 20);
      const int window = 1 + trial % 6, min_count = trial % 3;
      bool any = false;
      for (const auto& [t, n] : oracle::count(docs)) any = any || n >= min_count;
      if (!any) continue;
      const auto table = build_cooccurrence(test::partition("c", docs), window, min_count);
      const auto expected = oracle::cooccurrence(docs, window, min_count);
      CHECK(table.entries().size() == expected.size());
      for (const auto& [key, x] : expected) {
        CHECK(std::abs(table.at(key.first, key.second) - x) <= 1e-12);
        CHECK(table.at(key.first, key.second) == table.at(key.second, key.first));
      }
    }
  }

  TEST_CASE("glove loss falls over training") {
    std::mt19937_64 gen(7);
    const Docs docs = random_docs(gen, 40, 30, 12);
    const auto table = build_cooccurrence(test::partition("c", docs), 5, 0);
    GloveParams p;
    p.dim = 10;
    p.epochs = 30;
    std::vector<double> cost;
    const auto x = oracle::cooccurrence(docs, 5, 0);
    train_glove(table, p, [&](int, const GloveParameters& params) {
      oracle::GloveState s;
      for (Eigen::Index i = 0; i < table.vocabulary().size(); ++i) {
        const std::string& t = table.vocabulary().token(i);
        s.w[t] = std::vector<double>(params.main.row(i).data(), params.main.row(i).data() + p.dim);
        s.wc[t] = std::vector<double>(params.context.row(i).data(), params.context.row(i).data() + p.dim);
        s.b[t] = params.main_bias[i];
        s.bc[t] = params.context_bias[i];
      }
      cost.push_back(oracle::glove_cost(x, s, p.x_max, p.alpha));
    });
    REQUIRE(cost.size() == 30);
    // Stochastic order allows small bumps; windows of five must still fall.
    for (size_t e = 5; e < cost.size(); e += 5) CHECK(cost[e] <= cost[e - 5] * 1.05);
    CHECK(cost.back() < cost.front());
  }

  TEST_CASE("frame scores stay in bounds and follow the poles") {
    std::mt19937_64 gen(8);
    const EmbeddingModel model = random_model(gen, 40, 8);
    std::uniform_int_distribution<int> word(0, 39);
    for (int trial = 0; trial < 100; ++trial) {
      int a = word(gen), b = word(gen);
      if (a == b) continue;
      const Microframe f = make_microframe("w" + std::to_string(a), "w" + std::to_string(b), model);
      const Microframe swapped = make_microframe(f.pole_pos, f.pole_neg, model);
      Docs docs = random_docs(gen, 1, 45, 20);
      docs[0].push_back("w0");
      const Document d = test::raw("d", docs[0]);
      const auto bias = document_bias(d, f, model, no_stopwords());
      REQUIRE(bias);
      CHECK(*bias >= -1.0 - 1e-12);
      CHECK(*bias <= 1.0 + 1e-12);
      CHECK(std::abs(*bias + *document_bias(d, swapped, model, no_stopwords())) <= 1e-12);
      const double base = 0.1;
      const auto in = document_intensity(d, f, {f.id(), base}, model, no_stopwords());
      const auto in_swapped = document_intensity(d, swapped, {swapped.id(), -base}, model, no_stopwords());
      CHECK(std::abs(*in - *in_swapped) <= 1e-12);
      CHECK(*in >= 0.0);
      // Bag of words: order does not matter.
      auto shuffled = docs[0];
      std::shuffle(shuffled.begin(), shuffled.end(), gen);
      CHECK(std::abs(*document_bias(test::raw("s", shuffled), f, model, no_stopwords()) - *bias) <= 1e-12);
    }
  }

  TEST_CASE("cosine is bounded") {
    std::mt19937_64 gen(9);
    std::normal_distribution<double> g;
    for (int i = 0; i < 200; ++i) {
      Eigen::VectorXd a(5), b(5);
      for (int d = 0; d < 5; ++d) a[d] = g(gen), b[d] = g(gen);
      const double c = word_contribution(a, b);
      CHECK(std::abs(c) <= 1.0 + 1e-15);
      CHECK(std::abs(word_contribution(a, (3.0 * a).eval()) - 1.0) <= 1e-12);
    }
  }

  TEST_CASE("role tables are consistent") {
    std::mt19937_64 gen(10);
    const std::vector<std::string> agents = {"we", "they", "i", "the gop", "speaker pelosi",
                                             "the cdc", "our nurses and doctors here", "trump"};
    const std::vector<std::string> verbs = {"save", "stop", "help", "want", "blame"};
    const std::vector<std::string> patients = {"lives", "the virus", "jobs", "a very long patient phrase"};
    std::vector<RoleTriple> ts;
    for (int i = 0; i < 400; ++i) {
      RoleTriple t;
      t.party = i % 2 ? Party::D : Party::R;
      t.agent = agents[gen() % agents.size()];
      t.verb = t.verb_lemma = verbs[gen() % verbs.size()];
      t.patient = patients[gen() % patients.size()];
      t.agent_token_count = oracle::words(t.agent);
      t.patient_token_count = oracle::words(t.patient);
      ts.push_back(t);
    }
    const auto kept = filter_triples(ts);
    CHECK(filter_triples(kept).size() == kept.size());
    MembershipLists lists = MembershipLists::defaults();
    lists.other_party[Party::D] = {"trump", "gop"};
    lists.other_party[Party::R] = {"pelosi"};
    for (Party p : {Party::D, Party::R}) {
      const auto mine = triples_of_party(kept, p);
      std::map<MembershipCategory, size_t> counts;
      for (const auto& t : categorize_memberships(mine, lists)) counts[t.category] += 1;
      size_t sum = 0;
      for (const auto& [c, n] : counts) sum += n;
      CHECK(sum == mine.size());
    }
    const auto cd = combination_frequencies(triples_of_party(kept, Party::D));
    const auto cr = combination_frequencies(triples_of_party(kept, Party::R));
    const auto delta = differential_combinations(cd, cr, 1000);
    for (const auto& x : delta.a_over_b)
      for (const auto& y : delta.b_over_a)
        if (x.combination == y.combination) CHECK(x.difference == -y.difference);
    for (size_t i = 1; i < delta.a_over_b.size(); ++i)
      CHECK(delta.a_over_b[i].difference <= delta.a_over_b[i - 1].difference);
  }
}
