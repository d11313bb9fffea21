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

#include "narraframe/pipeline.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <set>

#include "narraframe/corpus.hpp"
#include "narraframe/embedding.hpp"
#include "narraframe/error.hpp"
#include "narraframe/frameaxis.hpp"
#include "narraframe/kmeans.hpp"
#include "narraframe/narrative_roles.hpp"
#include "narraframe/overrepresentation.hpp"
#include "narraframe/report.hpp"
#include "narraframe/umap.hpp"

namespace narraframe {

using json = nlohmann::json;
namespace fs = std::filesystem;

std::string_view stage_name(Stage stage) {
  switch (stage) {
    case Stage::Ingest: return "ingest";
    case Stage::LogOdds: return "logodds";
    case Stage::Embed: return "embed";
    case Stage::Project: return "project";
    case Stage::Frames: return "frames";
    case Stage::Roles: return "roles";
  }
  return "unknown";
}

const std::vector<Stage>& all_stages() {
  static const std::vector<Stage> stages = {Stage::Ingest, Stage::LogOdds, Stage::Embed,
                                            Stage::Project, Stage::Frames,  Stage::Roles};
  return stages;
}

std::optional<Stage> parse_stage(std::string_view name) {
  for (Stage s : all_stages()) {
    if (stage_name(s) == name) return s;
  }
  return std::nullopt;
}

namespace {

std::string fmt(double v) { return format_fixed(v); }
std::string num(std::int64_t v) { return std::to_string(v); }

struct Corpora {
  IngestReport ingest;
  CorpusPartition all;  // topic tokens normalized
  std::map<Party, CorpusPartition> topical;
  std::map<Party, CorpusPartition> background_by_party;
  CorpusPartition background;
  std::size_t unknown_party = 0;
};

struct LogOddsTables {
  LogOddsResult d_over_r;
  LogOddsResult r_over_d;
  RankedTerms top_d;
  RankedTerms top_r;
};

class Pipeline {
 public:
  explicit Pipeline(const PipelineConfig& config) : config_(config) {}

  ReportBundle run(const std::vector<Stage>& stages) {
    bundle_.output_dir = config_.output_dir;
    bundle_.config_hash = config_hash(config_);
    std::set<Stage> wanted(stages.begin(), stages.end());
    std::error_code ec;
    fs::create_directories(config_.output_dir, ec);
    if (ec) throw IoError("cannot create output directory " + config_.output_dir.string());

    for (Stage stage : all_stages()) {
      if (!wanted.count(stage)) continue;
      current_ = stage;
      try {
        switch (stage) {
          case Stage::Ingest: emit_ingest(); break;
          case Stage::LogOdds: emit_logodds(); break;
          case Stage::Embed: emit_embed(); break;
          case Stage::Project: emit_project(); break;
          case Stage::Frames: emit_frames(); break;
          case Stage::Roles: emit_roles(); break;
        }
      } catch (const StageError& e) {
        fail(e.stage(), e);
      } catch (const std::exception& e) {
        fail(std::string(stage_name(stage)), e);
      }
    }
    finish();
    return bundle_;
  }

 private:
  // Prerequisites are computed on first use. Errors are attributed to the
  // stage that produces the missing result.
  template <typename F>
  auto in_stage(Stage stage, F&& body) -> decltype(body()) {
    try {
      return body();
    } catch (const StageError&) {
      throw;
    } catch (const std::exception& e) {
      throw StageError(std::string(stage_name(stage)), e.what());
    }
  }

  const Corpora& corpora() {
    if (!corpora_) {
      corpora_ = in_stage(Stage::Ingest, [&] {
        auto c = std::make_unique<Corpora>();
        c->ingest = ingest_tweets(config_.tweets);
        c->all = normalize_topic_tokens(c->ingest.corpus, config_.topic_keywords);
        TopicSplit split = filter_topic(c->all, config_.topic_keywords);
        PartySplit topical = partition_by_party(split.topical);
        PartySplit background = partition_by_party(split.background);
        c->topical = std::move(topical.parts);
        c->background_by_party = std::move(background.parts);
        c->unknown_party = topical.excluded + background.excluded;
        c->background = merge_partitions(
            "background",
            {&c->background_by_party.at(Party::D), &c->background_by_party.at(Party::R)});
        return c;
      });
    }
    return *corpora_;
  }

  const LogOddsTables& logodds() {
    if (!logodds_) {
      const Corpora& c = corpora();
      logodds_ = in_stage(Stage::LogOdds, [&] {
        auto t = std::make_unique<LogOddsTables>();
        const CorpusPartition& d = c.topical.at(Party::D);
        const CorpusPartition& r = c.topical.at(Party::R);
        t->d_over_r = log_odds(d, r, c.background);
        t->r_over_d = log_odds(r, d, c.background);
        std::set<std::string, std::less<>> exclusions = config_.logodds.exclusions;
        if (config_.logodds.exclude_mentions) {
          for (const TermStat& s : t->d_over_r.terms) {
            if (!s.token.empty() && s.token[0] == '@') exclusions.insert(s.token);
          }
        }
        t->top_d = top_terms(t->d_over_r, config_.logodds.top_k, exclusions);
        t->top_r = top_terms(t->r_over_d, config_.logodds.top_k, exclusions);
        return t;
      });
    }
    return *logodds_;
  }

  std::optional<fs::path> embedding_cache_path() {
    if (!config_.cache_dir || config_.pretrained_vectors) return std::nullopt;
    json key = config_to_json(config_)["embedding"];
    key["topic_keywords"] = config_.topic_keywords;
    key["tweets"] = hex64(fnv1a64(read_file(config_.tweets)));
    return *config_.cache_dir / ("embeddings-" + hex64(fnv1a64(key.dump())) + ".txt");
  }

  const EmbeddingModel& model() {
    if (!model_) {
      const Corpora* c = config_.pretrained_vectors ? nullptr : &corpora();
      model_ = in_stage(Stage::Embed, [&] {
        if (config_.pretrained_vectors) {
          note("embedding: loaded pretrained vectors");
          return std::make_unique<EmbeddingModel>(load_embeddings(*config_.pretrained_vectors));
        }
        const auto cache = embedding_cache_path();
        if (cache && fs::exists(*cache)) {
          return std::make_unique<EmbeddingModel>(load_embeddings(*cache));
        }
        const EmbeddingConfig& e = config_.embedding;
        CooccurrenceTable cooc = build_cooccurrence(c->all, e.window, e.min_count);
        if (cooc.empty()) throw Error("no co-occurring tokens survive min_count");
        GloveResult trained = train_glove(cooc, e.glove);
        auto m = std::make_unique<EmbeddingModel>(std::move(trained.model));
        if (cache) {
          fs::create_directories(cache->parent_path());
          save_embeddings(*m, *cache);
        }
        return m;
      });
    }
    return *model_;
  }

  void note(std::string text) { bundle_.notes.push_back(std::move(text)); }

  void emit(std::string_view name, const std::string& content) {
    write_file(config_.output_dir / name, content);
    written_.push_back({std::string(name), std::string(stage_name(current_)),
                        static_cast<std::uint64_t>(content.size()), hex64(fnv1a64(content)),
                        bundle_.config_hash});
  }

  // Shrinks neighborhood size for small point sets.
  UmapParams projection_params(Eigen::Index points, const char* what) {
    if (points < 3) {
      throw Error(std::string("too few ") + what + " to project (" + std::to_string(points) + ")");
    }
    UmapParams p = config_.projection;
    if (p.n_neighbors > points - 1) {
      p.n_neighbors = static_cast<int>(points - 1);
      note(std::string("project: n_neighbors reduced to ") + std::to_string(p.n_neighbors) +
           " for " + what);
    }
    return p;
  }

  static std::vector<std::vector<std::string>> projection_rows(const Projection<double>& p,
                                                               const std::vector<int>& clusters) {
    std::vector<std::vector<std::string>> rows;
    for (Eigen::Index i = 0; i < p.coords.rows(); ++i) {
      rows.push_back({p.labels[static_cast<size_t>(i)], fmt(p.coords(i, 0)), fmt(p.coords(i, 1)),
                      std::to_string(clusters[static_cast<size_t>(i)])});
    }
    return rows;
  }

  void emit_ingest() {
    const Corpora& c = corpora();
    std::vector<std::vector<std::string>> rows;
    auto row = [&](const std::string& name, const CorpusPartition& p) {
      rows.push_back({name, num(static_cast<std::int64_t>(p.size())), num(p.total_tokens()),
                      num(static_cast<std::int64_t>(p.term_counts().size()))});
    };
    row("all", c.all);
    row("topical_D", c.topical.at(Party::D));
    row("topical_R", c.topical.at(Party::R));
    row("background_D", c.background_by_party.at(Party::D));
    row("background_R", c.background_by_party.at(Party::R));
    row("background", c.background);
    emit("corpus_summary.tsv", tsv_table({"partition", "documents", "tokens", "types"}, rows));
    note("ingest: " + std::to_string(c.ingest.lines) + " lines, " +
         std::to_string(c.ingest.malformed) + " malformed, " +
         std::to_string(c.ingest.non_english) + " non-English, " +
         std::to_string(c.ingest.duplicate_ids) + " duplicate ids, " +
         std::to_string(c.unknown_party) + " without party");
  }

  void emit_logodds() {
    const LogOddsTables& t = logodds();
    auto table = [](const RankedTerms& ranked) {
      std::vector<std::vector<std::string>> rows;
      for (const TermStat& s : ranked.terms) {
        rows.push_back({s.token, fmt(s.s), fmt(s.z), num(s.f_i), num(s.f_j), num(s.f_bg)});
      }
      return tsv_table({"token", "s", "z", "f_i", "f_j", "f_bg"}, rows);
    };
    emit("logodds_D.tsv", table(t.top_d));
    emit("logodds_R.tsv", table(t.top_r));
    if (t.top_d.short_list || t.top_r.short_list) note("logodds: fewer than top_k eligible terms");

    const Corpora& c = corpora();
    std::vector<std::vector<std::string>> rows;
    for (const SharedTerm& s : dense_rank_shared_terms(c.topical.at(Party::D), c.topical.at(Party::R),
                                                       c.background, config_.logodds.shared_top_k)) {
      rows.push_back({s.token, std::to_string(s.rank_i), std::to_string(s.rank_j),
                      std::to_string(s.rank_bg)});
    }
    emit("shared_terms.tsv", tsv_table({"token", "rank_D", "rank_R", "rank_bg"}, rows));
  }

  void emit_embed() { emit("embeddings.txt", format_embeddings(model())); }

  void emit_project() {
    const LogOddsTables& t = logodds();
    const EmbeddingModel& m = model();
    std::vector<std::string> tokens;
    std::vector<int> party;
    std::set<std::string, std::less<>> seen;
    std::size_t missing = 0;
    auto add = [&](const RankedTerms& ranked, int group) {
      for (const TermStat& s : ranked.terms) {
        if (!m.contains(s.token)) {
          ++missing;
          continue;
        }
        if (seen.insert(s.token).second) {
          tokens.push_back(s.token);
          party.push_back(group);
        }
      }
    };
    add(t.top_d, 0);
    add(t.top_r, 1);
    if (missing) note("project: " + std::to_string(missing) + " top terms missing from the embedding");
    Eigen::MatrixXd points(static_cast<Eigen::Index>(tokens.size()), m.dim());
    for (size_t i = 0; i < tokens.size(); ++i) {
      points.row(static_cast<Eigen::Index>(i)) = m.vectors().row(*m.find(tokens[i]));
    }
    const UmapParams params = projection_params(points.rows(), "top terms");
    Projection<double> p = project_umap(points, params, tokens);
    emit("terms_map.tsv", tsv_table({"token", "x", "y", "cluster"}, projection_rows(p, party)));
    emit("terms_map.svg", scatter_svg(p.labels, p.coords, party, "Over-represented terms (0 = D, 1 = R)"));
  }

  void emit_frames() {
    const Corpora& c = corpora();
    const EmbeddingModel& m = model();
    in_stage(Stage::Frames, [&] {
      MicroframeSet set = load_microframes(config_.antonyms, m);
      if (set.skipped) note("frames: " + std::to_string(set.skipped) + " antonym pairs skipped");
      const StopWords& stop = config_.frames.stopwords ? default_stopwords() : no_stopwords();
      FrameScorer scorer(m, std::move(set.frames), stop);
      const Eigen::RowVectorXd baseline = scorer.baseline(c.background);
      const CorpusPartition& d = c.topical.at(Party::D);
      const CorpusPartition& r = c.topical.at(Party::R);
      const CorpusScores scores_d = scorer.score(d, baseline);
      const CorpusScores scores_r = scorer.score(r, baseline);
      const FrameDifferences diff =
          differential_microframes(d, r, scorer, baseline, config_.frames.top_k);

      std::vector<std::vector<std::string>> rows;
      auto diff_rows = [&](const std::vector<FrameDifference>& list, const char* direction) {
        int rank = 0;
        for (const FrameDifference& f : list) {
          rows.push_back({direction, std::to_string(++rank), f.frame_id, f.pole_neg, f.pole_pos,
                          fmt(f.bias_a), fmt(f.intensity_a), fmt(f.bias_b), fmt(f.intensity_b),
                          fmt(f.difference)});
        }
      };
      diff_rows(diff.a_over_b, "D>R");
      diff_rows(diff.b_over_a, "R>D");
      emit("frames_diff.tsv",
           tsv_table({"direction", "rank", "frame", "pole_neg", "pole_pos", "bias_D", "intensity_D",
                      "bias_R", "intensity_R", "difference"},
                     rows));

      std::map<std::string, Eigen::Index> column;
      for (size_t i = 0; i < scorer.frames().size(); ++i) {
        column[scorer.frames()[i].id()] = static_cast<Eigen::Index>(i);
      }
      rows.clear();
      auto tweet_rows = [&](const std::vector<FrameDifference>& list, const char* direction,
                            const char* party, const CorpusPartition& corpus,
                            const CorpusScores& scores) {
        for (const FrameDifference& f : list) {
          int rank = 0;
          for (const ScoredDocument& s :
               top_documents(corpus, scores, column.at(f.frame_id), config_.frames.top_tweets)) {
            rows.push_back({direction, f.frame_id, party, std::to_string(++rank), s.doc.id,
                            fmt(s.bias), fmt(s.intensity), s.doc.text});
          }
        }
      };
      tweet_rows(diff.a_over_b, "D>R", "D", d, scores_d);
      tweet_rows(diff.b_over_a, "R>D", "R", r, scores_r);
      emit("frames_top_tweets.tsv",
           tsv_table({"direction", "frame", "party", "rank", "doc_id", "bias", "intensity", "text"},
                     rows));

      rows.clear();
      auto score_rows = [&](const CorpusPartition& corpus, const CorpusScores& scores) {
        for (size_t i = 0; i < corpus.size(); ++i) {
          if (!scores.scored[i]) continue;
          const auto row = static_cast<Eigen::Index>(i);
          for (size_t f = 0; f < scorer.frames().size(); ++f) {
            const auto col = static_cast<Eigen::Index>(f);
            rows.push_back({corpus.docs()[i].id, scorer.frames()[f].id(), fmt(scores.bias(row, col)),
                            fmt(scores.intensity(row, col))});
          }
        }
      };
      score_rows(d, scores_d);
      score_rows(r, scores_r);
      emit("frame_scores.tsv", tsv_table({"doc_id", "frame", "bias", "intensity"}, rows));
      return 0;
    });
  }

  void emit_roles() {
    const EmbeddingModel& m = model();
    in_stage(Stage::Roles, [&] {
      const RolesConfig& rc = config_.roles;
      TripleLoad load = load_triples(config_.triples);
      if (load.invalid) note("roles: " + std::to_string(load.invalid) + " invalid triple records");
      const std::vector<RoleTriple> triples = filter_triples(load.triples, rc.max_tokens);
      if (triples.empty()) throw Error("no triples left after the role-length filter");
      const std::vector<RoleTriple> by_d = triples_of_party(triples, Party::D);
      const std::vector<RoleTriple> by_r = triples_of_party(triples, Party::R);

      // Party terms: embedding neighbors of the seeds plus curated additions.
      MembershipLists lists;
      lists.us = rc.us_terms;
      lists.them = rc.them_terms;
      std::vector<std::vector<std::string>> rows;
      std::map<Party, std::vector<std::string>> party_terms;
      for (Party party : {Party::D, Party::R}) {
        std::set<std::string, std::less<>> seen;
        auto seeds = rc.party_seeds.find(party);
        if (seeds != rc.party_seeds.end() && !seeds->second.empty()) {
          bool any = std::any_of(seeds->second.begin(), seeds->second.end(),
                                 [&](const std::string& s) { return m.contains(s); });
          if (any) {
            for (std::string& t : expand_party_terms(m, seeds->second, rc.party_expansion_k)) {
              if (seen.insert(t).second) {
                rows.push_back({std::string(party_name(party)), t, "expanded"});
                party_terms[party].push_back(std::move(t));
              }
            }
          } else {
            note(std::string("roles: no party seed for ") + std::string(party_name(party)) +
                 " is in the embedding");
          }
        }
        if (auto curated = rc.party_terms.find(party); curated != rc.party_terms.end()) {
          for (const std::string& t : curated->second) {
            if (seen.insert(t).second) {
              rows.push_back({std::string(party_name(party)), t, "curated"});
              party_terms[party].push_back(t);
            }
          }
        }
      }
      emit("party_terms.tsv", tsv_table({"party", "term", "source"}, rows));
      // Other-party terms are keyed by the author's party.
      lists.other_party[Party::D] = party_terms[Party::R];
      lists.other_party[Party::R] = party_terms[Party::D];

      rows.clear();
      const CombinationDeltas deltas = differential_combinations(
          combination_frequencies(by_d), combination_frequencies(by_r), rc.combinations_top_k);
      auto delta_rows = [&](const std::vector<CombinationDelta>& list, const char* direction) {
        int rank = 0;
        for (const CombinationDelta& c : list) {
          rows.push_back({direction, std::to_string(++rank), c.combination.agent, c.combination.verb,
                          c.combination.patient, num(c.count_a), num(c.count_b), num(c.difference)});
        }
      };
      delta_rows(deltas.a_over_b, "D>R");
      delta_rows(deltas.b_over_a, "R>D");
      emit("roles_combinations.tsv",
           tsv_table({"direction", "rank", "agent", "verb", "patient", "count_D", "count_R",
                      "difference"},
                     rows));

      rows.clear();
      for (auto [party, subset] : {std::pair{"D", &by_d}, std::pair{"R", &by_r}}) {
        if (subset->empty()) continue;
        const AgentsPatients ap = top_agents_patients(*subset, rc.top_n);
        auto add = [&](const std::vector<Ranked>& list, const char* role) {
          int rank = 0;
          for (const Ranked& r : list) {
            rows.push_back({party, role, std::to_string(++rank), r.item, num(r.count)});
          }
        };
        add(ap.agents, "agent");
        add(ap.patients, "patient");
      }
      emit("roles_agents_patients.tsv",
           tsv_table({"party", "role", "rank", "item", "count"}, rows));

      rows.clear();
      std::map<std::pair<Party, MembershipCategory>, std::int64_t> categories;
      for (const TaggedTriple& t : categorize_memberships(triples, lists)) {
        ++categories[{t.triple.party, t.category}];
      }
      for (Party party : {Party::D, Party::R}) {
        for (MembershipCategory cat : {MembershipCategory::Us, MembershipCategory::Them,
                                       MembershipCategory::OtherParty, MembershipCategory::Other}) {
          rows.push_back({std::string(party_name(party)), std::string(category_name(cat)),
                          num(categories[{party, cat}])});
        }
      }
      emit("roles_membership.tsv", tsv_table({"party", "category", "triples"}, rows));

      rows.clear();
      std::vector<std::vector<std::string>> relationships;
      for (const auto& [set_name, verbs] : rc.verb_sets) {
        const std::set<std::string, std::less<>> verb_set(verbs.begin(), verbs.end());
        for (MembershipCategory cat : {MembershipCategory::Us, MembershipCategory::Them,
                                       MembershipCategory::OtherParty}) {
          const auto tables =
              patients_for_verbset(triples, verb_set, cat, rc.top_n, lists, rc.patient_merge);
          for (const auto& [party, ranked] : tables) {
            int rank = 0;
            for (const Ranked& r : ranked) {
              rows.push_back({set_name, std::string(category_name(cat)),
                              std::string(party_name(party)), std::to_string(++rank), r.item,
                              num(r.count)});
              if (cat != MembershipCategory::OtherParty) {
                relationships.push_back({cat == MembershipCategory::Us ? "us" : "them", set_name,
                                         r.item, std::string(party_name(party)), num(r.count)});
              }
            }
          }
        }
      }
      emit("roles_verbset_patients.tsv",
           tsv_table({"verb_set", "category", "party", "rank", "patient", "count"}, rows));
      emit("roles_relationships.tsv",
           tsv_table({"agent", "verb_set", "patient", "party", "weight"}, relationships));

      // Verb maps: each party's top verbs, projected and clustered.
      for (auto [party, subset] : {std::pair{Party::D, &by_d}, std::pair{Party::R, &by_r}}) {
        const std::string name(party_name(party));
        if (subset->empty()) throw Error("no triples for party " + name);
        std::vector<std::string> verbs;
        std::size_t missing = 0;
        for (const Ranked& r : top_verbs(*subset, rc.top_verbs)) {
          if (m.contains(r.item)) verbs.push_back(r.item);
          else ++missing;
        }
        if (missing) {
          note("roles: " + std::to_string(missing) + " top " + name +
               " verbs missing from the embedding");
        }
        Eigen::MatrixXd points(static_cast<Eigen::Index>(verbs.size()), m.dim());
        for (size_t i = 0; i < verbs.size(); ++i) {
          points.row(static_cast<Eigen::Index>(i)) = m.vectors().row(*m.find(verbs[i]));
        }
        const UmapParams params = projection_params(points.rows(), "verbs");
        Projection<double> p = project_umap(points, params, verbs);
        int k = rc.verb_clusters;
        if (k > points.rows()) {
          k = static_cast<int>(points.rows());
          note("roles: " + name + " verb cluster count reduced to " + std::to_string(k));
        }
        const Clustering<double> clusters =
            rc.cluster_projected ? kmeans(p.coords, k, rc.kmeans, verbs)
                                 : kmeans(points, k, rc.kmeans, verbs);
        emit("verbs_" + name + ".tsv",
             tsv_table({"token", "x", "y", "cluster"}, projection_rows(p, clusters.assignment)));
        emit("verbs_" + name + ".svg",
             scatter_svg(p.labels, p.coords, clusters.assignment, name + " verb clusters"));
      }
      return 0;
    });
  }

  void fail(const std::string& stage, const std::exception& e) {
    bundle_.partial = true;
    bundle_.failed_stage = stage;
    bundle_.error = e.what();
    finish();
    if (auto* se = dynamic_cast<const StageError*>(&e)) throw *se;
    throw StageError(stage, e.what());
  }

  void finish() {
    if (finished_) return;
    finished_ = true;
    std::map<std::string, ManifestEntry> merged;
    if (auto prior = read_manifest(config_.output_dir)) {
      for (ManifestEntry& e : prior->files) {
        if (fs::exists(config_.output_dir / e.path)) merged[e.path] = std::move(e);
      }
    }
    for (ManifestEntry& e : written_) merged[e.path] = std::move(e);
    bundle_.files.clear();
    for (auto& [path, e] : merged) bundle_.files.push_back(std::move(e));
    write_file(config_.output_dir / kManifestName, manifest_to_json(bundle_).dump(2) + "\n");
  }

  const PipelineConfig& config_;
  ReportBundle bundle_;
  Stage current_ = Stage::Ingest;
  bool finished_ = false;
  std::vector<ManifestEntry> written_;
  std::unique_ptr<Corpora> corpora_;
  std::unique_ptr<LogOddsTables> logodds_;
  std::unique_ptr<EmbeddingModel> model_;
};

}  // namespace

ReportBundle run_stages(const PipelineConfig& config, const std::vector<Stage>& stages) {
  Pipeline pipeline(config);
  return pipeline.run(stages);
}

ReportBundle run_pipeline(const PipelineConfig& config) { return run_stages(config, all_stages()); }

json manifest_to_json(const ReportBundle& bundle) {
  json files = json::array();
  for (const ManifestEntry& e : bundle.files) {
    files.push_back({{"path", e.path},
                     {"stage", e.stage},
                     {"bytes", e.bytes},
                     {"fnv1a", e.fnv1a},
                     {"config_hash", e.config_hash}});
  }
  json doc = {{"version", NARRAFRAME_VERSION},
              {"config_hash", bundle.config_hash},
              {"partial", bundle.partial},
              {"files", files},
              {"notes", bundle.notes}};
  doc["failed_stage"] = bundle.partial ? json(bundle.failed_stage) : json(nullptr);
  doc["error"] = bundle.partial ? json(bundle.error) : json(nullptr);
  return doc;
}

ReportBundle manifest_from_json(const json& doc, const fs::path& output_dir) {
  try {
    ReportBundle b;
    b.output_dir = output_dir;
    b.config_hash = doc.at("config_hash").get<std::string>();
    b.partial = doc.at("partial").get<bool>();
    if (b.partial) {
      b.failed_stage = doc.at("failed_stage").get<std::string>();
      b.error = doc.at("error").get<std::string>();
    }
    for (const json& f : doc.at("files")) {
      b.files.push_back({f.at("path").get<std::string>(), f.at("stage").get<std::string>(),
                         f.at("bytes").get<std::uint64_t>(), f.at("fnv1a").get<std::string>(),
                         f.at("config_hash").get<std::string>()});
    }
    b.notes = doc.at("notes").get<std::vector<std::string>>();
    return b;
  } catch (const json::exception& e) {
    throw IoError("malformed manifest in " + output_dir.string() + ": " + e.what());
  }
}

std::optional<ReportBundle> read_manifest(const fs::path& output_dir) {
  const fs::path path = output_dir / kManifestName;
  if (!fs::exists(path)) return std::nullopt;
  json doc = json::parse(read_file(path), nullptr, false);
  if (doc.is_discarded()) throw IoError("manifest is not valid JSON: " + path.string());
  return manifest_from_json(doc, output_dir);
}

}  // namespace narraframe
