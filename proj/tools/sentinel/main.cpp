#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>

#include "sentinel/pipeline/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"sentinel: real-time transient anomaly detection with Bayesian Bazin forecasts"};
  app.require_subcommand(1);

  sentinel::pipeline::CommandOptions options;
  std::uint64_t seed = 0;

  const auto add = [&](const std::string& name, const std::string& help, bool with_model) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", options.config, "pipeline config (YAML)")->required()->check(CLI::ExistingFile);
    sub->add_option("--jobs", options.jobs, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, "override the config seed");
    if (with_model) {
      sub->add_option("--model", options.model, "forecaster")->check(CLI::IsMember({"bazin", "external"}));
    }
    return sub;
  };
  add("generate", "simulate a population and write train.csv / test.csv", false);
  add("fit-priors", "build one class prior per trained class", false);
  add("score", "score every test curve against every trained model", true);
  add("evaluate", "ROC, AUC-vs-time and histogram tables from a score file", true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : sentinel::pipeline::kExitConfig;
  }

  auto* sub = app.get_subcommands().front();
  if (sub->count("--seed") > 0) options.seed = seed;
  return sentinel::pipeline::run_command(sub->get_name(), options, std::cout, std::cerr);
}
