// lab: verification sweeps over the inequality suites, instance generation,
// report export. Exit codes: 0 all pass, 1 inequality violation,
// 2 configuration/precondition error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lab/errors.hpp"
#include "lab/io.hpp"
#include "lab/parallel.hpp"
#include "lab/suites.hpp"

namespace {

void apply_config_file(const std::string& path, lab::RunConfig& config) {
  std::ifstream in(path);
  if (!in) throw lab::config_error("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw lab::config_error(std::string("malformed config file: ") + e.what());
  }
  if (j.contains("seed")) config.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("instances"))
    config.instances = j["instances"].get<std::size_t>();
  if (j.contains("n")) config.max_n = j["n"].get<int>();
  if (j.contains("p")) config.p = j["p"].get<double>();
  if (j.contains("samples")) config.samples = j["samples"].get<std::size_t>();
  if (j.contains("tol")) config.tol = j["tol"].get<double>();
  if (j.contains("out")) config.out = j["out"].get<std::string>();
  if (j.contains("format")) config.format = j["format"].get<std::string>();
}

int run(int argc, char** argv) {
  CLI::App app{"verification lab for four concentration-of-measure "
               "inequalities"};
  std::string suite;
  app.add_option("suite", suite,
                 "entropy|cube|gauss|convex|l1l2|transport|empirical|all|gen")
      ->required();
  lab::RunConfig config;
  std::string config_path;
  std::size_t instances = 0;
  auto* opt_n = app.add_option("--n", config.max_n, "max dimension / size");
  auto* opt_p = app.add_option("--p", config.p, "Bernoulli parameter");
  auto* opt_seed = app.add_option("--seed", config.seed, "sweep seed");
  auto* opt_samples =
      app.add_option("--samples", config.samples, "Monte Carlo samples");
  auto* opt_inst =
      app.add_option("--instances", instances, "instances per sweep");
  auto* opt_tol = app.add_option("--tol", config.tol, "tolerance override");
  auto* opt_out = app.add_option("--out", config.out, "output path");
  auto* opt_format = app.add_option("--format", config.format, "json|csv");
  app.add_option("--config", config_path, "JSON config file (flags win)");
  std::string gen_kind = "pattern_set";
  double gen_density = 0.3;
  std::size_t gen_family = 4;
  app.add_option("--kind", gen_kind, "gen: pattern_set|measure|process");
  app.add_option("--density", gen_density, "gen: subset density");
  app.add_option("--N", gen_family, "gen: family size / measure dim");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (!config_path.empty()) {
    lab::RunConfig from_file;
    apply_config_file(config_path, from_file);
    // flags win over config-file values
    if (!*opt_n) config.max_n = from_file.max_n;
    if (!*opt_p) config.p = from_file.p;
    if (!*opt_seed) config.seed = from_file.seed;
    if (!*opt_samples) config.samples = from_file.samples;
    if (!*opt_inst) instances = from_file.instances;
    if (!*opt_tol) config.tol = from_file.tol;
    if (!*opt_out) config.out = from_file.out;
    if (!*opt_format) config.format = from_file.format;
  }
  config.instances = instances;
  if (config.format != "json" && config.format != "csv")
    throw lab::config_error("format must be json or csv");

  if (const char* cap = std::getenv("LAB_THREADS"))
    lab::par::set_thread_cap(std::atoi(cap));

  if (suite == "gen") {
    const std::size_t n =
        config.max_n > 0 ? static_cast<std::size_t>(config.max_n) : 5;
    const std::string content =
        lab::generate_instance(gen_kind, config.seed, n, gen_density,
                               gen_family);
    if (config.out.empty())
      std::cout << content;
    else
      lab::io::write_file(config.out, content);
    return 0;
  }

  config.suite = suite;
  const lab::SuiteSummary summary = lab::run_suite(config);
  const std::string rendered = config.format == "json"
                                   ? lab::summary_to_json(summary)
                                   : lab::summary_to_csv(summary);
  if (config.out.empty())
    std::cout << rendered;
  else
    lab::io::write_file(config.out, rendered);
  std::fprintf(stderr,
               "suite=%s instances=%zu reports=%zu failures=%zu "
               "min_margin=%.3e wall=%.2fs\n",
               summary.suite.c_str(), summary.instances_run,
               summary.reports.size(), summary.failures, summary.min_margin,
               summary.wall_seconds);
  return summary.failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const lab::config_error& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const lab::precondition_error& e) {
    std::fprintf(stderr, "precondition error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
