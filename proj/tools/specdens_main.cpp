#include <cstdint>
#include <exception>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "specdens/commands.hpp"
#include "vendor/CLI11.hpp"

namespace {

struct Cli {
  std::string config_path;
  std::string out_override;
  std::uint64_t seed_override = 0;
  int jobs_override = 0;
  std::vector<CLI::Option*> out_opts, seed_opts, jobs_opts;

  void attach(CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON run configuration file")
        ->required();
    out_opts.push_back(sub->add_option("--out", out_override,
                                       "output directory (overrides config)"));
    seed_opts.push_back(sub->add_option(
        "--seed", seed_override, "master seed (overrides config)"));
    jobs_opts.push_back(sub->add_option(
        "--jobs", jobs_override, "worker thread cap (overrides config)"));
  }

  static bool given(const std::vector<CLI::Option*>& opts) {
    for (const auto* o : opts)
      if (o->count() > 0) return true;
    return false;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral decay densities, Orlicz profiles, and inequality "
               "certification on finite operator instances"};
  app.require_subcommand(1);
  Cli cli;

  const std::map<std::string, std::function<int(const specdens::RunConfig&)>>
      commands = {{"spectrum", specdens::cmd_spectrum},
                  {"profiles", specdens::cmd_profiles},
                  {"certify", specdens::cmd_certify},
                  {"scaling", specdens::cmd_scaling},
                  {"continuum", specdens::cmd_continuum}};
  const std::map<std::string, std::string> descriptions = {
      {"spectrum", "eigenvalues and the spectral decay density F"},
      {"profiles", "derived profiles G, H, L, M, N on configured grids"},
      {"certify", "inequality certification suite with margin report"},
      {"scaling", "quotient-tower densities, exponent fits, Sobolev brackets"},
      {"continuum", "closed-form R^n profiles and Monte-Carlo symbol density"}};
  for (const auto& [name, desc] : descriptions)
    cli.attach(app.add_subcommand(name, desc));

  CLI11_PARSE(app, argc, argv);

  try {
    specdens::RunConfig cfg = specdens::load_config(cli.config_path);
    if (Cli::given(cli.out_opts)) cfg.out = cli.out_override;
    if (Cli::given(cli.seed_opts)) cfg.seed = cli.seed_override;
    if (Cli::given(cli.jobs_opts)) cfg.jobs = cli.jobs_override;
    cfg.validate();
    const auto* sub = app.get_subcommands().front();
    return commands.at(sub->get_name())(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
