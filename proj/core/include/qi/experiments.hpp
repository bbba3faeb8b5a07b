#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qi/kernels.hpp"
#include "qi/lattice.hpp"
#include "qi/smoothness.hpp"

namespace qi {

/// Right-hand side a study compares the error with.
struct ComparatorSpec {
  /// "E", "Omega" (total modulus), "omega_frac" (fractional modulus),
  /// "K" (K-functional) or "besov_tail".
  std::string kind = "E";
  /// Order s of the modulus or K-functional; order N of the functional for besov_tail.
  double order = 2.0;
};

struct SymbolStudySpec {
  double s = 2.0;
  double delta = 0.45;
  int oversample = 8;
};

/// Per-(j, p) errors above this cap of grid points per norm are refused.
inline constexpr std::int64_t kMaxGridPoints = std::int64_t{1} << 22;

struct ExperimentConfig {
  std::string name = "study";
  KernelSpec kernel = Dirichlet{};
  FunctionalSpec functional = Delta{};
  std::vector<int> diag{2};
  int j_min = 1;
  int j_max = 1;
  std::vector<double> p{2.0};
  nlohmann::json test_function;
  int oversample = 16;
  std::uint64_t seed = 1;
  std::vector<ComparatorSpec> comparators;
  SymbolStudySpec symbol;
  SampleSpec samples;

  std::vector<int> levels() const;
  DilationLattice lattice() const { return DilationLattice(diag); }
};

/// Parses and validates; throws std::invalid_argument naming the offending field.
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& config);
/// Range, dimension and grid-size checks.
void validate(const ExperimentConfig& config);

/// FNV-1a of the canonical JSON dump.
std::string config_hash(const ExperimentConfig& config);

struct ReportRow {
  int j = 0;
  /// NaN for rows that do not depend on p.
  double p = 0.0;
  double error = 0.0;
  std::string error_tag;
  std::string comparator_name;
  double comparator = 0.0;
  std::string comparator_tag;
  double ratio = 0.0;
  double slope = 0.0;
  /// "error_tag/comparator_name:comparator_tag", or a quantity name for symbol rows.
  std::string tag;
};

struct SlopeFit {
  double p = 0.0;
  std::string series;
  /// Decay exponent: minus the slope of log error against j log m^{1/d}.
  double slope = 0.0;
  /// 1 - R^2 of the least-squares line.
  double residual = 0.0;
  int points = 0;
  bool flagged = false;
};

struct Bracket {
  double p = 0.0;
  std::string series;
  double min = 0.0;
  double max = 0.0;
  double spread = 0.0;
  int points = 0;
};

struct ExperimentReport {
  std::string study;
  ExperimentConfig config;
  std::vector<ReportRow> rows;
  std::vector<SlopeFit> fits;
  std::vector<Bracket> brackets;
  nlohmann::json metadata;
};

/// Fit residuals above this value are flagged.
inline constexpr double kFitResidualLimit = 0.2;

/// Least-squares fit of log y against x, reported as a decay exponent.
SlopeFit fit_decay(const std::vector<double>& x, const std::vector<double>& y);

/// min, max and max/min of the finite positive entries.
Bracket bracket_of(const std::vector<double>& ratios);

/// Per j and p: approximation error and every configured comparator; decay fit per p.
ExperimentReport run_rate_study(const ExperimentConfig& config);

/// Ratio error / comparator per j and p, with the bracket across j.
ExperimentReport run_equivalence_study(const ExperimentConfig& config,
                                       const std::optional<ComparatorSpec>& comparator = {});

/// Per j: compat radius, order-s and order-(s+1) ratios, L1 bounds of the
/// windowed quotient symbols.
ExperimentReport run_symbol_study(const ExperimentConfig& config);

/// Names of the pinned reproduction configurations.
std::vector<std::string> reproduction_names();
/// The pinned configuration and the study kind ("rate", "equivalence", "symbol").
std::pair<ExperimentConfig, std::string> reproduction_config(const std::string& name);
ExperimentReport run_reproduction(const std::string& name);

}  // namespace qi
