#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qi/experiments.hpp"
#include "qi/report.hpp"
#include "qi/spec_json.hpp"
#include "qi/test_functions.hpp"

using nlohmann::json;

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json base_config() {
  return json{{"name", "unit"},
              {"operator",
               {{"kernel", {{"variant", "Dirichlet"}, {"params", json::object()}}},
                {"functional", {{"variant", "Delta"}, {"params", json::object()}}}}},
              {"lattice", {{"diag", {2}}}},
              {"j_range", {1, 4}},
              {"p", {2}},
              {"test_function", {{"type", "pure"}, {"k", 5}}},
              {"comparators", {{{"kind", "E"}}}}};
}

}  // namespace

TEST(TestFunctions, Catalog) {
  const auto pure = qi::build_test_function({{"type", "pure"}, {"k", 5}});
  EXPECT_EQ(qi::max_coeff_diff(pure.f, qi::SpectralFunction::cosine({5})), 0.0);
  EXPECT_EQ(pure.l2_tail_bound, 0.0);

  const auto p8 = qi::build_test_function({{"type", "power"}, {"alpha", 2.0}, {"K", 8}});
  EXPECT_NEAR(p8.f.coeff(qi::Index{3}).real(), 1.0 / 18.0, 1e-16);
  EXPECT_NEAR(p8.f.coeff(qi::Index{-3}).real(), 1.0 / 18.0, 1e-16);
  EXPECT_EQ(p8.f.size(), 16u);
  EXPECT_TRUE(p8.f.is_real());

  const auto p512 = qi::build_test_function({{"type", "power"}, {"alpha", 2.0}, {"K", 512}});
  double energy = 0.0;
  for (int k = 512; k >= 1; --k) energy += std::pow(k, -4.0) / 2.0;
  EXPECT_NEAR(p512.f.energy(), energy, 1e-15);
  double tail = 0.0;
  for (int k = 200000; k > 512; --k) tail += std::pow(k, -4.0) / 2.0;
  EXPECT_GE(p512.l2_tail_bound, std::sqrt(tail));
  EXPECT_LE(p512.l2_tail_bound, 1.1 * std::sqrt(tail));

  EXPECT_THROW(qi::build_test_function({{"type", "power"}, {"alpha", 0.5}, {"K", 8}}), std::invalid_argument);
  EXPECT_THROW(qi::build_test_function({{"type", "wavelet"}}), std::invalid_argument);

  const auto an = qi::build_test_function({{"type", "analytic"}, {"K", 4}});
  EXPECT_NEAR(an.f.coeff(qi::Index{0}).real(), 0.5, 1e-16);
  EXPECT_NEAR(an.f.coeff(qi::Index{-3}).real(), std::exp(-3.0) / 2, 1e-16);
  EXPECT_EQ(an.f.size(), 9u);

  const auto tensor = qi::build_test_function(
      {{"type", "tensor"}, {"factors", {{{"type", "pure"}, {"k", 1}}, {{"type", "pure"}, {"k", 2}}}}});
  EXPECT_EQ(tensor.f.dim(), 2);
  EXPECT_NEAR(tensor.f.coeff(qi::Index{1, -2}).real(), 0.25, 1e-16);

  const json rnd{{"type", "random"}, {"terms", 10}, {"radius", 6}, {"d", 2}, {"seed", 3}};
  const auto a = qi::build_test_function(rnd), b = qi::build_test_function(rnd);
  EXPECT_EQ(qi::max_coeff_diff(a.f, b.f), 0.0);
  EXPECT_TRUE(a.f.is_real());
  json other = rnd;
  other["seed"] = 4;
  EXPECT_GT(qi::max_coeff_diff(a.f, qi::build_test_function(other).f), 0.0);
}

TEST(Config, ParsesAndRoundTrips) {
  json j = base_config();
  j["p"] = {1, 2, "inf"};
  j["comparators"] = {{{"kind", "Omega"}, {"order", 2}}, {{"kind", "K"}, {"order", 1.5}}};
  const auto config = qi::config_from_json(j);
  EXPECT_EQ(config.levels(), (std::vector<int>{1, 2, 3, 4}));
  EXPECT_TRUE(std::isinf(config.p[2]));
  EXPECT_EQ(config.comparators.size(), 2u);
  const auto back = qi::config_from_json(qi::config_to_json(config));
  EXPECT_EQ(qi::config_to_json(back), qi::config_to_json(config));
  EXPECT_EQ(qi::config_hash(back), qi::config_hash(config));
  json changed = j;
  changed["seed"] = 99;
  EXPECT_NE(qi::config_hash(qi::config_from_json(changed)), qi::config_hash(config));
}

TEST(Config, RejectsInvalid) {
  const auto reject = [](json j) { EXPECT_THROW(qi::config_from_json(j), std::invalid_argument) << j.dump(); };
  json j = base_config();
  j["j_range"] = {4, 2};
  reject(j);
  j = base_config();
  j["j_range"] = {0, 2};
  reject(j);
  j = base_config();
  j["j_range"] = {1, 21};
  reject(j);
  j = base_config();
  j["j_range"] = {1, 20};
  j["oversample"] = 16;
  reject(j);
  j = base_config();
  j["p"] = json::array();
  reject(j);
  j = base_config();
  j["p"] = {0.5};
  reject(j);
  j = base_config();
  j["p"] = {"two"};
  reject(j);
  j = base_config();
  j["comparators"] = {{{"kind", "Zeta"}}};
  reject(j);
  j = base_config();
  j["lattice"]["diag"] = {2, 2};
  reject(j);
  j = base_config();
  j["operator"]["kernel"] = {{"variant", "Riesz"}, {"params", {{"s", 1.0}, {"gamma", -1.0}}}};
  reject(j);
  j = base_config();
  j["name"] = "";
  reject(j);
}

TEST(Fit, DecayAndBracket) {
  std::vector<double> x, y;
  for (int j = 1; j <= 6; ++j) {
    x.push_back(j * std::log(2.0));
    y.push_back(3.0 * std::pow(2.0, -2.5 * j));
  }
  const auto fit = qi::fit_decay(x, y);
  EXPECT_NEAR(fit.slope, 2.5, 1e-12);
  EXPECT_NEAR(fit.residual, 0.0, 1e-12);
  EXPECT_FALSE(fit.flagged);
  EXPECT_EQ(fit.points, 6);

  const auto wild = qi::fit_decay({1, 2, 3, 4, 5, 6}, {1, 100, 1, 100, 1, 100});
  EXPECT_TRUE(wild.flagged);
  EXPECT_GT(wild.residual, qi::kFitResidualLimit);

  const auto b = qi::bracket_of({2.0, NAN, 8.0, 4.0, 0.0, INFINITY});
  EXPECT_EQ(b.min, 2.0);
  EXPECT_EQ(b.max, 8.0);
  EXPECT_EQ(b.spread, 4.0);
  EXPECT_EQ(b.points, 3);
}

TEST(RateStudy, ZeroOnceFrequencyIsInside) {
  json j = base_config();
  j["j_range"] = {1, 6};
  const auto report = qi::run_rate_study(qi::config_from_json(j));
  ASSERT_EQ(report.rows.size(), 6u);
  for (const auto& row : report.rows) {
    EXPECT_EQ(row.comparator_name, "E");
    EXPECT_EQ(row.comparator_tag, "exact");
    if (row.j >= 4) {
      EXPECT_EQ(row.error, 0.0);
      EXPECT_EQ(row.tag.substr(0, 18), "exact-reproduction");
    } else {
      EXPECT_GT(row.error, 0.0);
      EXPECT_NE(row.tag.find("exact/E:exact"), std::string::npos);
    }
  }
}

TEST(RateStudy, AnalyticSlope) {
  json j = base_config();
  j["j_range"] = {3, 7};
  j["test_function"] = {{"type", "analytic"}, {"K", 64}};
  const auto report = qi::run_rate_study(qi::config_from_json(j));
  ASSERT_EQ(report.fits.size(), 1u);
  EXPECT_GE(report.fits[0].slope, 4.0);
  EXPECT_LE(report.fits[0].residual, qi::kFitResidualLimit);
  EXPECT_FALSE(report.fits[0].flagged);
}

TEST(RateStudy, KantorovichModulusRatioRecorded) {
  auto [config, kind] = qi::reproduction_config("e4");
  EXPECT_EQ(kind, "equivalence");
  const auto report = qi::run_rate_study(config);
  ASSERT_EQ(report.rows.size(), 6u);
  for (const auto& row : report.rows) {
    EXPECT_EQ(row.comparator_name, "Omega_2");
    EXPECT_EQ(row.comparator_tag, "grid-realized");
    EXPECT_GT(row.ratio, 0.0);
    EXPECT_TRUE(std::isfinite(row.ratio));
  }
}

TEST(EquivalenceStudy, StrictlyCompatibleVsBestApproximation) {
  const auto report = qi::run_reproduction("e2");
  ASSERT_EQ(report.brackets.size(), 1u);
  EXPECT_EQ(report.brackets[0].points, 6);
  EXPECT_LE(report.brackets[0].spread, 4.0);
  for (const auto& row : report.rows) EXPECT_TRUE(std::isfinite(row.ratio));
}

TEST(EquivalenceStudy, ReproducedInputGivesExactRows) {
  json j = base_config();
  j["j_range"] = {4, 6};
  j["p"] = {2, "inf"};
  const auto report = qi::run_equivalence_study(qi::config_from_json(j), qi::ComparatorSpec{"E", 0});
  ASSERT_EQ(report.rows.size(), 6u);
  for (const auto& row : report.rows) {
    EXPECT_EQ(row.tag.substr(0, 18), "exact-reproduction");
    EXPECT_TRUE(std::isnan(row.ratio));
  }
  // a nonzero comparator turns the same rows into genuine zero ratios
  const auto omega = qi::run_equivalence_study(qi::config_from_json(j), qi::ComparatorSpec{"Omega", 2});
  for (const auto& row : omega.rows) EXPECT_EQ(row.ratio, 0.0);
}

TEST(EquivalenceStudy, RieszVsKFunctionalBracket) {
  const auto report = qi::run_reproduction("e6");
  ASSERT_EQ(report.brackets.size(), 1u);
  EXPECT_EQ(report.brackets[0].series, "error/K_1.5");
  EXPECT_GT(report.brackets[0].min, 0.0);
  EXPECT_TRUE(std::isfinite(report.brackets[0].max));
}

TEST(SymbolStudy, StrictPairRadiusOne) {
  json j = base_config();
  j["operator"]["kernel"] = {{"variant", "CorrectedDirichlet"}, {"params", {{"sigma", 0.5}}}};
  j["operator"]["functional"] = {{"variant", "Average"}, {"params", {{"sigma", 0.5}}}};
  j["j_range"] = {2, 6};
  const auto report = qi::run_symbol_study(qi::config_from_json(j));
  int radius_rows = 0;
  for (const auto& row : report.rows) {
    if (row.tag == "compat-radius") {
      EXPECT_EQ(row.error, 1.0);
      ++radius_rows;
    }
  }
  EXPECT_EQ(radius_rows, 5);
}

TEST(SymbolStudy, KantorovichVerdicts) {
  const auto report = qi::run_reproduction("e3");
  const auto& verdicts = report.metadata.at("verdicts");
  EXPECT_TRUE(verdicts.at("order-2").at("stable_within_2").get<bool>());
  EXPECT_GE(verdicts.at("order-3").at("growth_last_over_first").get<double>(), 4.0);
  EXPECT_TRUE(verdicts.at("upper-l1").at("stable_within_2").get<bool>());
}

TEST(SymbolStudy, RieszUpperQuotientUniform) {
  json j = base_config();
  j["operator"]["kernel"] = {{"variant", "Riesz"}, {"params", {{"s", 1.5}, {"gamma", 1.0}}}};
  j["j_range"] = {2, 6};
  j["symbol"] = {{"s", 1.5}, {"delta", 0.45}};
  const auto report = qi::run_symbol_study(qi::config_from_json(j));
  EXPECT_TRUE(report.metadata.at("verdicts").at("upper-l1").at("stable_within_2").get<bool>());
  // Dirichlet-type defect is zero near the origin for Riesz+Delta only at 0; lower quotient is defined
  for (const auto& row : report.rows)
    if (row.tag.rfind("upper-l1", 0) == 0) EXPECT_TRUE(std::isfinite(row.error));
}

TEST(SymbolStudy, UndefinedLowerQuotientReported) {
  json j = base_config();
  j["j_range"] = {2, 3};
  const auto report = qi::run_symbol_study(qi::config_from_json(j));
  int undefined = 0;
  for (const auto& row : report.rows) {
    if (row.tag == "lower-l1:undefined") {
      EXPECT_TRUE(std::isnan(row.error));
      ++undefined;
    }
  }
  EXPECT_EQ(undefined, 2);
}

TEST(Report, CsvLayout) {
  const auto report = qi::run_reproduction("e1");
  const std::string csv = qi::emit_csv(report);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "j,p,error,comparator,ratio,slope,tag");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 7);
  EXPECT_NE(csv.find("exact/E:exact"), std::string::npos);
}

TEST(Report, Deterministic) {
  const auto a = qi::emit_json(qi::run_reproduction("e4")).dump();
  const auto b = qi::emit_json(qi::run_reproduction("e4")).dump();
  EXPECT_EQ(a, b);
}

TEST(Report, JsonMirrorsRowsAndConfig) {
  const auto report = qi::run_reproduction("e2");
  const json j = qi::emit_json(report);
  EXPECT_EQ(j.at("rows").size(), report.rows.size());
  EXPECT_EQ(j.at("metadata").at("config_hash"), qi::config_hash(report.config));
  const auto config = qi::config_from_json(j.at("config"));
  EXPECT_EQ(qi::config_to_json(config), qi::config_to_json(report.config));
  EXPECT_EQ(j.at("rows")[0].at("comparator_tag"), "exact");
}

TEST(Report, GoldenCsv) {
  const auto golden = read_file(std::filesystem::path(QI_TEST_DATA_DIR) / "e2_golden.csv");
  ASSERT_FALSE(golden.empty());
  EXPECT_EQ(qi::emit_csv(qi::run_reproduction("e2")), golden);
}

TEST(Report, WritesFilesAndSurfacesPaths) {
  const auto dir = std::filesystem::temp_directory_path() / "qi_report_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto report = qi::run_reproduction("e1");
  const auto path = qi::write_report(report, dir, qi::ReportFormat::Json);
  EXPECT_EQ(path.filename(), "e1.json");
  EXPECT_EQ(json::parse(read_file(path)), qi::emit_json(report));
  const auto blocker = dir / "file";
  std::ofstream(blocker) << "x";
  try {
    qi::write_report(report, blocker / "sub", qi::ReportFormat::Csv);
    ADD_FAILURE() << "expected an I/O error";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("sub"), std::string::npos);
  }
  std::filesystem::remove_all(dir);
}

TEST(Reproductions, AllRun) {
  EXPECT_EQ(qi::reproduction_names(), (std::vector<std::string>{"e1", "e2", "e3", "e4", "e5", "e6"}));
  for (const auto& name : qi::reproduction_names()) EXPECT_FALSE(qi::run_reproduction(name).rows.empty());
  EXPECT_THROW(qi::reproduction_config("e9"), std::invalid_argument);
  EXPECT_EQ(qi::parse_format("json"), qi::ReportFormat::Json);
  EXPECT_THROW(qi::parse_format("xml"), std::invalid_argument);
  EXPECT_EQ(qi::round15(0.1 + 0.2), 0.3);
}
