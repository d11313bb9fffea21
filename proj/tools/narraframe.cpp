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

// narraframe: command-line front end for the analysis pipeline.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "narraframe/config.hpp"
#include "narraframe/error.hpp"
#include "narraframe/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitStage = 3;

struct Overrides {
  std::string config;
  std::optional<int> top_k;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
};

using narraframe::PipelineConfig;
using narraframe::Stage;

void apply(const Overrides& o, const std::vector<Stage>& stages, PipelineConfig& c) {
  if (o.out) c.output_dir = *o.out;
  const bool whole = stages.size() > 1;
  for (Stage stage : stages) {
    switch (stage) {
      case Stage::Ingest:
        break;
      case Stage::LogOdds:
        if (o.top_k) c.logodds.top_k = *o.top_k;
        break;
      case Stage::Embed:
        if (o.seed) c.embedding.glove.seed = *o.seed;
        break;
      case Stage::Project:
        if (o.top_k && !whole) c.logodds.top_k = *o.top_k;
        if (o.seed) c.projection.seed = *o.seed;
        break;
      case Stage::Frames:
        if (o.top_k) c.frames.top_k = *o.top_k;
        break;
      case Stage::Roles:
        if (o.top_k) c.roles.combinations_top_k = *o.top_k;
        if (o.seed) {
          c.roles.kmeans.seed = *o.seed;
          c.projection.seed = *o.seed;
        }
        break;
    }
  }
}

int execute(const Overrides& o, const std::vector<Stage>& stages) {
  PipelineConfig config;
  try {
    config = narraframe::load_config(o.config);
    apply(o, stages, config);
    narraframe::validate_config(config);
  } catch (const narraframe::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  try {
    const narraframe::ReportBundle bundle = narraframe::run_stages(config, stages);
    for (const std::string& note : bundle.notes) std::cerr << "note: " << note << "\n";
    std::cout << bundle.files.size() << " files in " << bundle.output_dir.string()
              << " (config " << bundle.config_hash << ")\n";
    return kExitOk;
  } catch (const narraframe::StageError& e) {
    std::cerr << "stage '" << e.stage() << "' failed: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kExitStage;
}

int validate(const std::string& path) {
  try {
    PipelineConfig config = narraframe::load_config(path);
    narraframe::validate_config(config);
    std::cout << "config ok (" << narraframe::config_hash(config) << ")\n";
    return kExitOk;
  } catch (const narraframe::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partisan narrative analysis of tweet corpora"};
  app.require_subcommand(0, 1);
  app.set_version_flag("--version", std::string("narraframe ") + NARRAFRAME_VERSION);
  std::string validate_path;
  app.add_option("--validate-config", validate_path, "Check a config file and exit")
      ->check(CLI::ExistingFile);

  struct Command {
    const char* name;
    const char* help;
    std::vector<Stage> stages;
    Overrides overrides;
    CLI::App* app = nullptr;
  };
  std::vector<Command> commands = {
      {"run", "Run every stage", narraframe::all_stages(), {}},
      {"ingest", "Read tweets and write corpus statistics", {Stage::Ingest}, {}},
      {"logodds", "Over-represented terms per party", {Stage::LogOdds}, {}},
      {"embed", "Train or load word vectors", {Stage::Embed}, {}},
      {"project", "2-D map of over-represented terms", {Stage::Project}, {}},
      {"frames", "Differential microframes and top tweets", {Stage::Frames}, {}},
      {"roles", "Agent/verb/patient tables and verb clusters", {Stage::Roles}, {}},
  };
  for (Command& cmd : commands) {
    cmd.app = app.add_subcommand(cmd.name, cmd.help);
    Overrides& o = cmd.overrides;
    cmd.app->add_option("--config", o.config, "Pipeline config (JSON)")->required();
    cmd.app->add_option("--top-k", o.top_k, "Override the stage's k")->check(CLI::PositiveNumber);
    cmd.app->add_option("--seed", o.seed, "Override the stage's seed");
    cmd.app->add_option("--out", o.out, "Output directory");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (!validate_path.empty()) return validate(validate_path);
  for (Command& cmd : commands) {
    if (cmd.app->parsed()) return execute(cmd.overrides, cmd.stages);
  }
  std::cerr << app.help();
  return kExitConfig;
}
