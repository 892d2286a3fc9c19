#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "honeysim/config.hpp"
#include "honeysim/techniques.hpp"

namespace {

int cmd_run(const std::string& config_path, std::optional<std::uint64_t> seed,
            std::optional<honeysim::Tick> ticks, std::optional<std::string> preset,
            int replications, std::optional<std::string> output_dir) {
  honeysim::CampaignConfig config = honeysim::load_config(config_path);
  if (seed) config.seed = *seed;
  if (ticks) config.ticks = *ticks;
  if (preset) {
    if (*preset != "figure2") {
      std::cerr << "unknown preset '" << *preset << "'\n";
      return 2;
    }
    config.figure2_preset = true;
  }
  if (output_dir) config.output_dir = *output_dir;

  int runs = std::max(1, replications);
  for (int i = 0; i < runs; ++i) {
    honeysim::CampaignConfig run_config = config;
    run_config.seed = config.seed + static_cast<std::uint64_t>(i);
    if (runs > 1) {
      run_config.output_dir = config.output_dir + "/run_" + std::to_string(run_config.seed);
    }
    auto out = honeysim::run_campaign_to_dir(run_config);
    std::cout << "run seed=" << run_config.seed << " -> " << out.directory
              << " manifest=" << out.manifest_hash << '\n';
    for (const auto& hp : out.result.honeypots) {
      if (hp.generation_only) {
        std::cout << "note: honeypot " << hp.name
                  << " is generation-only; expect little social interaction\n";
      }
    }
  }
  return 0;
}

int cmd_report(const std::string& log_dir, const std::string& out_dir) {
  honeysim::report_from_dir(log_dir, out_dir);
  std::cout << "reports written to " << out_dir << '\n';
  return 0;
}

int cmd_catalogue() {
  std::printf("id\tfamily\tverb\ttarget_source\tordering\tsource\tlanguage\tword_order\t"
              "mentions\thashtags\n");
  for (const auto& spec : honeysim::technique_catalogue()) {
    if (spec.family == honeysim::TechniqueFamily::Consume) {
      std::printf("%d\tconsume\t%s\t%s\t%s\t-\t-\t-\t-\t-\n", int(spec.id),
                  std::string(to_string(spec.verb)).c_str(),
                  std::string(to_string(spec.target_source)).c_str(),
                  std::string(to_string(spec.ordering)).c_str());
    } else {
      std::printf("%d\tgenerate\t-\t-\t-\t%s\t%s\t%s\t%d\t%d\n", int(spec.id),
                  std::string(to_string(spec.source)).c_str(),
                  std::string(to_string(spec.language)).c_str(),
                  std::string(to_string(spec.word_order)).c_str(), spec.mentions ? 1 : 0,
                  spec.hashtags ? 1 : 0);
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"social honeypot campaign simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<honeysim::Tick> ticks;
  std::optional<std::string> preset;
  std::optional<std::string> output_dir;
  int replications = 1;

  auto* run = app.add_subcommand("run", "run a campaign from a config file");
  run->add_option("config", config_path, "campaign config (JSON)")->required();
  run->add_option("--seed", seed, "override the config seed");
  run->add_option("--ticks", ticks, "override the campaign length");
  run->add_option("--preset", preset, "honeypot preset (figure2)");
  run->add_option("--replications", replications, "independent seeded runs");
  run->add_option("--output", output_dir, "override the output directory");

  std::string log_dir;
  std::string report_out = "reports";
  auto* report = app.add_subcommand("report", "recompute reports from a run directory");
  report->add_option("logdir", log_dir, "directory written by 'run'")->required();
  report->add_option("--output", report_out, "where to write the report CSVs");

  auto* catalogue = app.add_subcommand("catalogue", "print the technique table");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path, seed, ticks, preset, replications, output_dir);
    if (report->parsed()) return cmd_report(log_dir, report_out);
    if (catalogue->parsed()) return cmd_catalogue();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
