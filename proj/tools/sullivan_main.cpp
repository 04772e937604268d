#include "commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using sullivan::cli::RunConfig;

int main(int argc, char** argv) {
  CLI::App app{"Rational homotopy computations on CDGA presentations and simplicial sets", "sullivan"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string output;
  app.add_option("-o,--output", output, "Write the report to this file instead of stdout");

  auto withFile = [&](CLI::App* sub) { sub->add_option("FILE", cfg.input, "Input file")->required(); };
  auto withN = [&](CLI::App* sub, const char* what, int least = 2) {
    sub->add_option("-N", cfg.maxDegree, what)->capture_default_str()->check(CLI::Range(least, 1 << 20));
  };
  auto withJson = [&](CLI::App* sub) { sub->add_flag("--json", cfg.json, "Emit JSON (schema 1)"); };

  auto* cohomology = app.add_subcommand("cohomology", "Cohomology dimensions and representatives");
  withFile(cohomology);
  withN(cohomology, "Highest degree", 0);

  auto* model = app.add_subcommand("minimal-model", "Minimal Sullivan model, degree by degree");
  withFile(model);
  withN(model, "Build and certify the model through this degree");

  auto* loop = app.add_subcommand("loop", "Cohomology of the based loop space");
  withFile(loop);
  withN(loop, "Highest degree of H(ΩX)");

  auto* freeLoop = app.add_subcommand("free-loop", "Free loop space model and its cohomology");
  withFile(freeLoop);
  withN(freeLoop, "Highest degree");

  auto* path = app.add_subcommand("path-space", "Based path space model over the doubled model");
  withFile(path);
  withN(path, "Degree through which a minimal model is built for non-free input");

  auto* classify = app.add_subcommand("classify", "Elliptic or hyperbolic evidence");
  withFile(classify);
  withN(classify, "Degree through which a minimal model is built for non-free input");
  classify->add_option("-B", cfg.bound, "Degree bound for the finiteness search")->capture_default_str();

  auto* invariants = app.add_subcommand("invariants", "Classification, category bounds and loop series");
  withFile(invariants);
  withN(invariants, "Highest degree for cohomology and series");
  invariants->add_option("-B", cfg.bound, "Degree bound for the finiteness search")->capture_default_str();
  invariants->add_option("--toomer-cap", cfg.toomerCap, "Largest word length tried")->capture_default_str();

  auto* pl = app.add_subcommand("pl-verify", "Check ∮dw = δ∮w on random global polynomial forms");
  auto* plFile = pl->add_option("FILE", cfg.input, "Simplicial set file");
  pl->add_option("--builtin", cfg.builtin, "delta2, delta3 or bddelta3")->excludes(plFile);
  pl->callback([&] {
    if (cfg.input.empty() && cfg.builtin.empty()) throw CLI::ValidationError("pl-verify needs --builtin NAME or FILE");
  });
  pl->add_option("--trials", cfg.trials, "Number of sampled forms")->capture_default_str()->check(CLI::NonNegativeNumber);
  pl->add_option("--poly-cap", cfg.polyCap, "Polynomial degree cap of sampled forms")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  pl->add_option("--seed", cfg.seed, "Seed of the sampler")->capture_default_str();

  auto* validate = app.add_subcommand("validate", "Parse and validate a .cdga or .scx file");
  withFile(validate);

  for (auto* sub : {cohomology, model, loop, freeLoop, path, classify, invariants, pl, validate}) withJson(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : sullivan::cli::kUsageError;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  if (output.empty()) return sullivan::cli::run(cfg, std::cout, std::cerr);
  std::ostringstream report;
  int code = sullivan::cli::run(cfg, report, std::cerr);
  std::ofstream file(output);
  if (!file) {
    std::cerr << "error: cannot write '" << output << "'\n";
    return sullivan::cli::kDomainError;
  }
  file << report.str();
  return code;
}
