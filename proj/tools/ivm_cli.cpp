// Batch front-end: reads one experiment spec, writes one JSON report.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ivm/ivm.h"

namespace {

constexpr int kExitInvalid = 3;

int report_error(const std::string& msg) {
  std::cerr << "ivm: " << msg << "\n";
  return kExitInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact certification experiments for induced modules over affine Lie algebras"};
  app.set_version_flag("--version", std::string(ivm_version()));
  std::string spec_path, out_path;
  int jobs = 1;
  std::uint64_t seed = 1;
  app.add_option("--spec", spec_path, "Experiment spec (JSON, schema 1)")->required()->check(CLI::ExistingFile);
  app.add_option("--out", out_path, "Write the JSON report here instead of stdout");
  app.add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1, 256));
  app.add_option("--seed", seed, "Seed for sampled sweeps");
  app.require_subcommand(0, 1);

  struct Cmd {
    const char* name;
    const char* help;
  };
  const Cmd cmds[] = {
      {"run", "Run every task listed in the spec"},
      {"algebra", "Roots in the level box and a bracket table"},
      {"partition", "Validate quase partitions and the Levi/orthogonal decomposition"},
      {"heisenberg", "Fock relations, admissibility and the two-sums test"},
      {"certify", "Singular vectors and cyclicity of the induced module"},
      {"wakimoto", "Realization dump, homomorphism check and match with the induced module"},
      {"twist", "Twisting functor intertwiner checks"},
      {"pbw", "Sampled bracket identity on the induced module"},
  };
  for (const auto& c : cmds) app.add_subcommand(c.name, c.help)->fallthrough();

  CLI11_PARSE(app, argc, argv);

  std::ifstream in(spec_path);
  if (!in) return report_error("cannot read " + spec_path);
  std::stringstream text;
  text << in.rdbuf();

  ivm_experiment* ex = nullptr;
  if (ivm_experiment_create(text.str().c_str(), &ex) != IVM_OK) return report_error(ivm_last_error());
  ivm_experiment_set_jobs(ex, jobs);
  ivm_experiment_set_seed(ex, seed);
  for (const auto* sub : app.get_subcommands())
    if (sub->get_name() != "run" && ivm_experiment_set_task(ex, sub->get_name().c_str()) != IVM_OK) {
      ivm_experiment_destroy(ex);
      return report_error(ivm_last_error());
    }

  char* json = nullptr;
  int code = 0;
  const ivm_status st = ivm_experiment_run(ex, &json, &code);
  ivm_experiment_destroy(ex);
  if (st != IVM_OK) return report_error(ivm_last_error());

  if (out_path.empty()) {
    std::fputs(json, stdout);
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      ivm_string_free(json);
      return report_error("cannot write " + out_path);
    }
    out << json;
  }
  ivm_string_free(json);
  return code;
}
