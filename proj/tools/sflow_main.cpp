#include <CLI11.hpp>
#include <iostream>

#include "sflow/runner.hpp"

namespace {

struct CommonArgs {
  std::string config_file;
  std::string out_prefix;
  long seed = -1;
  bool seed_set = false;
  bool quiet = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_file, "run configuration file")->required();
  cmd->add_option("--out", args.out_prefix, "output file path prefix");
  cmd->add_option("--seed", args.seed, "override the config seed")
      ->each([&args](const std::string&) { args.seed_set = true; });
  cmd->add_flag("--quiet", args.quiet, "suppress progress on standard error");
}

int dispatch(sflow::Task task, const CommonArgs& args) {
  try {
    sflow::RunConfig cfg = sflow::parse_config_file(args.config_file);
    if (cfg.task != task)
      throw sflow::Error(std::string("config task '") + sflow::task_name(cfg.task) +
                         "' does not match subcommand '" + sflow::task_name(task) + "'");
    if (!args.out_prefix.empty()) cfg.output = args.out_prefix;
    if (args.seed_set) cfg.seed = static_cast<unsigned long>(args.seed);
    cfg.quiet = args.quiet;
    if (!cfg.quiet)
      std::cerr << "sflow: task " << sflow::task_name(cfg.task) << ", family "
                << sflow::family_name(cfg.family) << ", output prefix " << cfg.output
                << "\n";
    return sflow::run(cfg, std::cerr);
  } catch (const sflow::Error& e) {
    std::cerr << "[cli] " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral flow engine for paths of Hermitian matrices"};
  app.require_subcommand(1);

  struct Sub {
    const char* name;
    const char* help;
    sflow::Task task;
  };
  const Sub subs[] = {
      {"flow", "spectral flow of an operator path", sflow::Task::flow},
      {"winding", "winding number of the exponential loop", sflow::Task::winding},
      {"rectangle", "alternating boundary flow sum of a rectangle", sflow::Task::rectangle},
      {"diagnose", "gap / strong / phi_n continuity moduli", sflow::Task::diagnostic},
      {"eigentraj", "eigenvalue trajectories along a path", sflow::Task::eigentraj},
  };

  std::array<CommonArgs, std::size(subs)> args;
  int status = 0;
  for (size_t i = 0; i < std::size(subs); ++i) {
    CLI::App* cmd = app.add_subcommand(subs[i].name, subs[i].help);
    add_common(cmd, args[i]);
    const sflow::Task task = subs[i].task;
    CommonArgs* a = &args[i];
    cmd->callback([task, a, &status]() { status = dispatch(task, *a); });
  }

  CLI11_PARSE(app, argc, argv);
  return status;
}
