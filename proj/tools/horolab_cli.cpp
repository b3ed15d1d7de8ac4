#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "horolab/analyses.hpp"

namespace {

int run(const std::string& config_path, long long seed_override,
        const std::string& out_override, const std::string& format_override) {
  using namespace horolab;

  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "error: cannot open config file '" << config_path << "'\n";
    return 3;
  }
  std::stringstream buf;
  buf << in.rdbuf();

  Json config_json;
  try {
    config_json = Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    std::cerr << "error: malformed JSON in '" << config_path << "': " << e.what()
              << "\n";
    return 3;
  }

  RunConfig cfg;
  try {
    cfg = parse_run_config(config_json);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  if (seed_override >= 0) cfg.seed = static_cast<std::uint64_t>(seed_override);
  if (!out_override.empty()) cfg.out_path = out_override;
  if (!format_override.empty()) cfg.format = format_override;

  Report report;
  try {
    report = run_analysis(cfg);
  } catch (const ConvergenceError& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return 2;
  } catch (const InconclusiveError& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return 2;
  } catch (const SamplingError& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    // domain / capability / argument / validation problems are configuration
    // errors from the CLI's point of view
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }

  const std::string payload = emit_report(report, cfg.format);
  if (cfg.out_path.empty()) {
    std::cout << payload;
  } else {
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write '" << cfg.out_path << "'\n";
      return 3;
    }
    out << payload;
  }
  return exit_code_for(report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"horolab: metric-geometry analyses on exactly solvable model spaces"};
  std::string config_path;
  long long seed = -1;
  std::string out_path;
  std::string format;
  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--seed", seed, "override the config seed");
  app.add_option("--out", out_path, "output path (default: config 'out' or stdout)");
  app.add_option("--format", format, "json or csv (default: config 'format')")
      ->check(CLI::IsMember({"json", "csv", ""}));
  CLI11_PARSE(app, argc, argv);
  return run(config_path, seed, out_path, format);
}
