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

#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "narraframe/embedding.hpp"
#include "narraframe/error.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace narraframe;

namespace {

oracle::GloveState state_of(const CooccurrenceTable& cooc, const GloveParameters& p) {
  oracle::GloveState s;
  for (Eigen::Index i = 0; i < cooc.vocabulary().size(); ++i) {
    const std::string& t = cooc.vocabulary().token(i);
    s.w[t] = std::vector<double>(p.main.row(i).data(), p.main.row(i).data() + p.main.cols());
    s.wc[t] = std::vector<double>(p.context.row(i).data(), p.context.row(i).data() + p.context.cols());
    s.b[t] = p.main_bias[i];
    s.bc[t] = p.context_bias[i];
  }
  return s;
}

EmbeddingModel planted(std::vector<std::string> tokens, std::vector<std::vector<double>> rows) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return EmbeddingModel(std::move(tokens), std::move(m));
}

}  // namespace

TEST_SUITE("embedding") {
  TEST_CASE("window counts: a b a") {
    const auto t = build_cooccurrence(test::partition("c", {{"a", "b", "a"}}), 1, 0);
    CHECK(t.at("a", "b") == 2.0);
    CHECK(t.at("b", "a") == 2.0);
    CHECK(t.at("a", "a") == 0.0);
  }

  TEST_CASE("window counts: a b, wide window") {
    const auto t = build_cooccurrence(test::partition("c", {{"a", "b"}}), 5, 0);
    CHECK(t.at("a", "b") == 1.0);
    CHECK(t.entries().size() == 2);
  }

  TEST_CASE("distance weighting and document boundaries") {
    const auto t = build_cooccurrence(test::partition("c", {{"a", "x", "b"}, {"b", "c"}}), 10, 0);
    CHECK(t.at("a", "b") == 0.5);
    CHECK(t.at("a", "c") == 0.0);
    CHECK(t.at("b", "c") == 1.0);
  }

  TEST_CASE("rare tokens removed before windowing") {
    // "x" occurs once and is dropped, making a and b adjacent.
    const auto t = build_cooccurrence(test::partition("c", {{"a", "x", "b"}, {"a", "b"}}), 1, 2);
    CHECK_FALSE(t.vocabulary().contains("x"));
    CHECK(t.at("a", "b") == 2.0);
  }

  TEST_CASE("vocabulary order is frequency then token") {
    const auto t = build_cooccurrence(test::partition("c", {{"b", "a", "c", "c"}}), 2, 0);
    CHECK(t.vocabulary().tokens() == std::vector<std::string>{"c", "a", "b"});
  }

  TEST_CASE("empty corpus is an error") {
    CHECK_THROWS_AS(build_cooccurrence(CorpusPartition("e", {}), 10, 0), Error);
    CHECK_THROWS_AS(build_cooccurrence(test::partition("c", {{"a"}}), 0, 0), Error);
  }

  TEST_CASE("single pair trains to near-zero loss") {
    const auto t = build_cooccurrence(test::partition("c", {{"a", "b"}}), 5, 0);
    GloveParams p;
    p.dim = 2;
    p.epochs = 200;
    const GloveResult r = train_glove(t, p);
    const double cost = oracle::glove_cost(oracle::cooccurrence({{"a", "b"}}, 5, 0),
                                           state_of(t, r.parameters), p.x_max, p.alpha);
    CHECK(cost / 2.0 < 1e-3);
    CHECK(std::abs(cost - glove_objective(t, r.parameters, p.x_max, p.alpha)) < 1e-12);
  }

  TEST_CASE("training is deterministic and final vector is main plus context") {
    const CorpusPartition c =
        test::partition("c", {{"a", "b", "c", "a"}, {"b", "c", "d"}, {"a", "d", "c"}});
    const auto t = build_cooccurrence(c, 3, 0);
    GloveParams p;
    p.dim = 4;
    p.epochs = 20;
    p.seed = 9;
    const GloveResult r1 = train_glove(t, p);
    const GloveResult r2 = train_glove(t, p);
    CHECK(r1.model.vectors() == r2.model.vectors());
    CHECK(r1.epoch_loss == r2.epoch_loss);
    CHECK(r1.epoch_loss.size() == 20);
    const Eigen::MatrixXd sum = r1.parameters.main + r1.parameters.context;
    CHECK(r1.model.vectors() == sum);
    p.seed = 10;
    CHECK(train_glove(t, p).model.vectors() != r1.model.vectors());
  }

  TEST_CASE("epoch callback") {
    const auto t = build_cooccurrence(test::partition("c", {{"a", "b", "c"}}), 2, 0);
    GloveParams p;
    p.dim = 2;
    p.epochs = 3;
    std::vector<int> seen;
    train_glove(t, p, [&](int epoch, const GloveParameters&) { seen.push_back(epoch); });
    CHECK(seen == std::vector<int>{1, 2, 3});
  }

  TEST_CASE("glove defaults") {
    const GloveParams p;
    CHECK(p.dim == 300);
    CHECK(p.epochs == 500);
    CHECK(p.x_max == 100.0);
    CHECK(p.alpha == 0.75);
    CHECK(p.learning_rate == 0.05);
    CHECK(glove_weight(200.0, 100.0, 0.75) == 1.0);
    CHECK(glove_weight(100.0, 100.0, 0.75) == 1.0);
    CHECK(glove_weight(50.0, 100.0, 0.75) == doctest::Approx(std::pow(0.5, 0.75)));
  }

  TEST_CASE("vector text format") {
    const EmbeddingModel m = parse_embeddings("cat 1 2 3\ndog 0.5 -1 2e-3\n", "mem");
    CHECK(m.dim() == 3);
    CHECK(m.size() == 2);
    CHECK(m.vector("dog")[2] == 2e-3);
    CHECK_THROWS_AS(parse_embeddings("", "mem"), IoError);
    try {
      parse_embeddings("cat 1 2 3\ndog 1 2\n", "mem");
      FAIL("expected an error");
    } catch (const IoError& e) {
      CHECK(std::string(e.what()).find("mem:2:") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_embeddings("cat 1 x 3\n", "mem"), IoError);
    CHECK_THROWS_AS(parse_embeddings("cat\n", "mem"), IoError);
    CHECK_THROWS_AS(load_embeddings("/nonexistent/vectors.txt"), IoError);
  }

  TEST_CASE("save and load round-trip bitwise") {
    const auto t = build_cooccurrence(test::partition("c", {{"a", "b", "c", "a", "d"}}), 3, 0);
    GloveParams p;
    p.dim = 5;
    p.epochs = 5;
    const EmbeddingModel m = train_glove(t, p).model;
    const auto path = test::scratch("roundtrip") / "v.txt";
    save_embeddings(m, path);
    const EmbeddingModel back = load_embeddings(path);
    CHECK(back.vocabulary().tokens() == m.vocabulary().tokens());
    CHECK(back.vectors() == m.vectors());
    CHECK(format_embeddings(back) == format_embeddings(m));
  }

  TEST_CASE("model invariants") {
    CHECK_THROWS_AS(EmbeddingModel({}, Eigen::MatrixXd(0, 3)), Error);
    Eigen::MatrixXd bad(1, 2);
    bad << 1, std::nan("");
    CHECK_THROWS_AS(EmbeddingModel({"a"}, bad), Error);
    CHECK_THROWS_AS(EmbeddingModel({"a", "a"}, Eigen::MatrixXd::Ones(2, 2)), Error);
    const EmbeddingModel m = planted({"a"}, {{1, 2}});
    CHECK_THROWS_AS(m.vector("zzz"), Error);
  }

  TEST_CASE("nearest neighbors") {
    const EmbeddingModel m =
        planted({"a", "b", "c", "d", "e"}, {{1, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {-1, 0, 0}});
    const auto nn = nearest_neighbors(m, "a", 4);
    REQUIRE(nn.size() == 4);
    CHECK(nn[0].token == "b");
    CHECK(nn[0].similarity >= 1.0 - 1e-9);
    CHECK(nn[1].token == "d");
    CHECK(nn[2].token == "c");
    CHECK(std::abs(nn[2].similarity) < 1e-12);
    CHECK(nn[3].token == "e");
    for (const auto& n : nn) CHECK(n.token != "a");
    CHECK_THROWS_AS(nearest_neighbors(m, "zzz", 2), Error);
    // A raw vector query excludes nothing.
    const auto raw = nearest_neighbors(m, Eigen::Vector3d(1, 0, 0), 2);
    CHECK(raw[0].token == "a");
    CHECK(raw[1].token == "b");
    for (const auto& n : raw) CHECK(n.similarity <= 1.0 + 1e-12);
  }

  TEST_CASE("party term expansion") {
    // Three planted clusters along the coordinate axes.
    const EmbeddingModel m = planted(
        {"dem", "dems", "pelosi", "gop", "rep", "mcconnell", "tree", "leaf", "root"},
        {{1, 0.1, 0}, {1, 0.2, 0}, {1, 0, 0.1}, {0.1, 1, 0}, {0, 1, 0.2}, {0.2, 1, 0},
         {0, 0.1, 1}, {0.1, 0, 1}, {0, 0.2, 1}});
    const auto d = expand_party_terms(m, {"dem"}, 2);
    CHECK(d.size() == 3);
    for (const auto& t : d) CHECK((t == "dem" || t == "dems" || t == "pelosi"));
    CHECK(d[0] == "dem");

    const EmbeddingModel pair = planted({"x", "y", "z"}, {{1, 0}, {1, 0.01}, {0, 1}});
    CHECK(expand_party_terms(pair, {"x", "y"}, 1).size() == 2);
    CHECK(expand_party_terms(pair, {"X", "nope"}, 1).size() == 2);
    CHECK_THROWS_AS(expand_party_terms(pair, {"nope"}, 1), Error);
  }
}
