// qi: run quasi-interpolation rate, equivalence and symbol studies.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "qi/experiments.hpp"
#include "qi/report.hpp"

namespace {

struct Options {
  std::string config_path;
  std::string out_dir;
  std::string format = "csv";
  std::optional<std::uint64_t> seed;
  std::optional<int> oversample;
  std::string comparator;
  double comparator_order = 2.0;
  std::vector<std::string> only;
};

qi::ExperimentConfig load_config(const Options& opt) {
  std::ifstream in(opt.config_path);
  if (!in) throw std::runtime_error("cannot open config " + opt.config_path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("config " + opt.config_path + " is not valid JSON: " + e.what());
  }
  if (opt.seed) j["seed"] = *opt.seed;
  if (opt.oversample) j["oversample"] = *opt.oversample;
  return qi::config_from_json(j);
}

void apply_overrides(qi::ExperimentConfig& config, const Options& opt) {
  if (opt.seed) {
    config.seed = *opt.seed;
    config.samples.seed = *opt.seed;
  }
  if (opt.oversample) config.oversample = *opt.oversample;
  qi::validate(config);
}

void emit(const qi::ExperimentReport& report, const Options& opt) {
  const qi::ReportFormat format = qi::parse_format(opt.format);
  if (opt.out_dir.empty()) {
    if (format == qi::ReportFormat::Csv) {
      std::cout << qi::emit_csv(report);
    } else {
      std::cout << qi::emit_json(report).dump(2) << '\n';
    }
    return;
  }
  std::cerr << "wrote " << qi::write_report(report, opt.out_dir, format).string() << '\n';
}

void add_common(CLI::App* cmd, Options& opt, bool needs_config) {
  auto* config = cmd->add_option("--config", opt.config_path, "Experiment config (JSON)");
  if (needs_config) config->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", opt.out_dir, "Output directory (stdout when omitted)");
  cmd->add_option("--format", opt.format, "Report format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--seed", opt.seed, "Override the config seed");
  cmd->add_option("--oversample", opt.oversample, "Override the quadrature oversampling")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Periodic quasi-interpolation studies"};
  app.require_subcommand(1);
  Options opt;

  auto* rate = app.add_subcommand("ratecheck", "Errors, comparators and fitted decay per level");
  add_common(rate, opt, true);

  auto* equiv = app.add_subcommand("equivcheck", "Ratio of error to a comparator across levels");
  add_common(equiv, opt, true);
  equiv->add_option("--comparator", opt.comparator, "E, Omega, omega_frac, K or besov_tail")
      ->check(CLI::IsMember({"E", "Omega", "omega_frac", "K", "besov_tail"}));
  equiv->add_option("--order", opt.comparator_order, "Order of the comparator");

  auto* symbol = app.add_subcommand("symbolcheck", "Compatibility and multiplier diagnostics");
  add_common(symbol, opt, true);

  auto* reproduce = app.add_subcommand("reproduce", "Run the pinned example configurations");
  add_common(reproduce, opt, false);
  reproduce->add_option("--only", opt.only, "Subset of e1..e6");

  CLI11_PARSE(app, argc, argv);

  try {
    if (rate->parsed()) {
      emit(qi::run_rate_study(load_config(opt)), opt);
    } else if (equiv->parsed()) {
      std::optional<qi::ComparatorSpec> comparator;
      if (!opt.comparator.empty()) comparator = qi::ComparatorSpec{opt.comparator, opt.comparator_order};
      emit(qi::run_equivalence_study(load_config(opt), comparator), opt);
    } else if (symbol->parsed()) {
      emit(qi::run_symbol_study(load_config(opt)), opt);
    } else if (reproduce->parsed()) {
      const auto names = opt.only.empty() ? qi::reproduction_names() : opt.only;
      for (const auto& name : names) {
        auto [config, kind] = qi::reproduction_config(name);
        apply_overrides(config, opt);
        qi::ExperimentReport report = kind == "symbol" ? qi::run_symbol_study(config)
                                      : kind == "rate" ? qi::run_rate_study(config)
                                                       : qi::run_equivalence_study(config);
        emit(report, opt);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
