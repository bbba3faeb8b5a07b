#include "qi/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <future>
#include <limits>
#include <stdexcept>
#include <thread>

#include "qi/quasiinterp.hpp"
#include "qi/spec_json.hpp"
#include "qi/test_functions.hpp"

namespace qi {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

double p_from_json(const json& v) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf" || s == "infinity") return kInf;
    throw std::invalid_argument("p must be a number or \"inf\", got \"" + s + "\"");
  }
  return v.get<double>();
}

json p_to_json(double p) { return std::isinf(p) ? json("inf") : json(p); }

/// Runs fn(0..n-1) concurrently and returns results in index order.
template <class Fn>
auto parallel_map(std::size_t n, Fn fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using R = decltype(fn(std::size_t{}));
  std::vector<R> out;
  out.reserve(n);
  const std::size_t width = std::max(1u, std::thread::hardware_concurrency());
  for (std::size_t start = 0; start < n; start += width) {
    std::vector<std::future<R>> batch;
    for (std::size_t i = start; i < std::min(n, start + width); ++i) {
      batch.push_back(std::async(std::launch::async, fn, i));
    }
    for (auto& fut : batch) out.push_back(fut.get());
  }
  return out;
}

const std::vector<std::string>& comparator_kinds() {
  static const std::vector<std::string> kinds{"E", "Omega", "omega_frac", "K", "besov_tail"};
  return kinds;
}

std::string comparator_name(const ComparatorSpec& c) {
  return c.kind == "E" ? "E" : c.kind + "_" + fmt(c.order);
}

TaggedValue evaluate_comparator(const ComparatorSpec& c, const SpectralFunction& f,
                                const DilationLattice& lattice, int level, double p,
                                const ExperimentConfig& config) {
  const int os = config.oversample;
  if (c.kind == "E") return best_approx(f, lattice, level, p, os);
  if (c.kind == "Omega") {
    const ModulusRequest req = ModulusRequest::total(static_cast<int>(c.order), p);
    return {modulus(f, req, lattice, level, config.samples, os), Method::GridRealized};
  }
  if (c.kind == "omega_frac") {
    const ModulusRequest req = ModulusRequest::fractional(c.order, p);
    return {modulus(f, req, lattice, level, config.samples, os), Method::GridRealized};
  }
  if (c.kind == "K") {
    const KFunctionalValue k = k_functional(f, c.order, lattice, level, p, os);
    return {k.value, k.method};
  }
  if (c.kind == "besov_tail") {
    // m^{-j(1/p + N/d)} sum_{nu >= j} m^{(1/p + N/d) nu} E_{M^nu}(f)_p
    const double m = static_cast<double>(lattice.det());
    const double rate = (std::isinf(p) ? 0.0 : 1.0 / p) + c.order / lattice.dim();
    const int top = std::max(level, exact_level(f, lattice, p));
    double sum = 0.0;
    Method method = Method::Exact;
    for (int nu = level; nu <= top; ++nu) {
      const TaggedValue e = best_approx(f, lattice, nu, p, os);
      method = e.method;
      sum += std::pow(m, rate * (nu - level)) * e.value;
    }
    return {sum, method};
  }
  throw std::invalid_argument("unknown comparator \"" + c.kind + "\"");
}

struct Cell {
  int j;
  double p;
};

std::vector<Cell> cells_of(const ExperimentConfig& config) {
  std::vector<Cell> cells;
  for (int j : config.levels()) {
    for (double p : config.p) cells.push_back({j, p});
  }
  return cells;
}

ExperimentReport run_table(const ExperimentConfig& config,
                           const std::vector<ComparatorSpec>& comparators, const std::string& study) {
  validate(config);
  const TestFunction tf = build_test_function(config.test_function);
  const DilationLattice lattice = config.lattice();
  const QuasiInterpOperator base(config.kernel, config.functional, lattice, config.j_min);
  const auto cells = cells_of(config);

  const auto computed = parallel_map(cells.size(), [&](std::size_t i) {
    const Cell cell = cells[i];
    const QuasiInterpOperator op = base.at_level(cell.j);
    const double error = approximation_error(op, tf.f, cell.p, config.oversample);
    const std::string error_tag = cell.p == 2.0 ? "exact" : "grid-realized";
    std::vector<ReportRow> rows;
    if (comparators.empty()) {
      rows.push_back({cell.j, cell.p, error, error_tag, "none", kNaN, "none", kNaN, kNaN,
                      error_tag + "/none"});
    }
    for (const auto& c : comparators) {
      const TaggedValue value = evaluate_comparator(c, tf.f, lattice, cell.j, cell.p, config);
      ReportRow row{cell.j, cell.p, error, error_tag, comparator_name(c), value.value,
                    method_tag(value.method), kNaN, kNaN, ""};
      row.tag = row.error_tag + "/" + row.comparator_name + ":" + row.comparator_tag;
      if (error == 0.0 && value.value == 0.0) {
        row.tag = "exact-reproduction";
      } else {
        row.ratio = value.value == 0.0 ? kInf : error / value.value;
      }
      rows.push_back(std::move(row));
    }
    return rows;
  });

  ExperimentReport report;
  report.study = study;
  report.config = config;
  for (const auto& rows : computed) report.rows.insert(report.rows.end(), rows.begin(), rows.end());

  const double log_step = std::log(static_cast<double>(lattice.det())) / lattice.dim();
  for (double p : config.p) {
    std::vector<double> x, y;
    for (int j : config.levels()) {
      for (const auto& row : report.rows) {
        if (row.j == j && row.p == p) {
          x.push_back(j * log_step);
          y.push_back(row.error);
          break;
        }
      }
    }
    SlopeFit fit = fit_decay(x, y);
    fit.p = p;
    fit.series = "error";
    for (auto& row : report.rows) {
      if (row.p == p) {
        row.slope = fit.slope;
        if (fit.flagged) row.tag += "|fit-flagged";
      }
    }
    report.fits.push_back(fit);
    for (const auto& c : comparators) {
      std::vector<double> ratios;
      for (const auto& row : report.rows) {
        if (row.p == p && row.comparator_name == comparator_name(c)) ratios.push_back(row.ratio);
      }
      Bracket b = bracket_of(ratios);
      b.p = p;
      b.series = "error/" + comparator_name(c);
      report.brackets.push_back(b);
    }
  }
  report.metadata = {{"test_function", tf.label}, {"l2_tail_bound", tf.l2_tail_bound}};
  return report;
}

ComparatorSpec comparator_from_json(const json& j) {
  ComparatorSpec c;
  if (j.is_string()) {
    c.kind = j.get<std::string>();
  } else {
    c.kind = j.at("kind").get<std::string>();
    c.order = j.value("order", 2.0);
  }
  return c;
}

}  // namespace

std::vector<int> ExperimentConfig::levels() const {
  std::vector<int> out;
  for (int j = j_min; j <= j_max; ++j) out.push_back(j);
  return out;
}

void validate(const ExperimentConfig& config) {
  if (config.name.empty()) throw std::invalid_argument("config: name must not be empty");
  const DilationLattice lattice(config.diag);
  if (config.j_min < 1 || config.j_max < config.j_min) {
    throw std::invalid_argument("config: j_range must be a nonempty range of positive levels");
  }
  if (config.oversample < 1) throw std::invalid_argument("config: oversample must be positive");
  if (config.p.empty()) throw std::invalid_argument("config: p list must not be empty");
  for (double p : config.p) {
    if (!(p >= 1.0)) throw std::invalid_argument("config: every p must satisfy p >= 1");
  }
  std::int64_t points = 0;
  try {
    points = lattice.cardinality(config.j_max);
  } catch (const std::overflow_error&) {
    throw std::invalid_argument("config: m^{j_max} overflows");
  }
  if (points > kMaterializeLimit) throw std::invalid_argument("config: m^{j_max} exceeds 2^20");
  if (points * config.oversample > kMaxGridPoints) {
    throw std::invalid_argument("config: m^{j_max} * oversample exceeds 2^22");
  }
  validate(config.kernel, lattice.dim());
  validate(config.functional, lattice.dim());
  if (!config.test_function.is_null()) {
    const TestFunction tf = build_test_function(config.test_function);
    if (tf.f.dim() != lattice.dim()) {
      throw std::invalid_argument("config: test function dimension does not match the lattice");
    }
  }
  for (const auto& c : config.comparators) {
    if (std::find(comparator_kinds().begin(), comparator_kinds().end(), c.kind) ==
        comparator_kinds().end()) {
      throw std::invalid_argument("config: unknown comparator \"" + c.kind + "\"");
    }
    if (!(c.order >= 0.0)) throw std::invalid_argument("config: comparator order must be >= 0");
  }
  if (!(config.symbol.delta > 0.0 && config.symbol.delta <= 1.0)) {
    throw std::invalid_argument("config: symbol.delta must lie in (0, 1]");
  }
}

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  ExperimentConfig c;
  c.name = j.value("name", c.name);
  if (j.contains("operator")) {
    const json& op = j.at("operator");
    if (op.contains("kernel")) c.kernel = kernel_from_json(op.at("kernel"));
    if (op.contains("functional")) c.functional = functional_from_json(op.at("functional"));
  }
  if (j.contains("lattice")) c.diag = j.at("lattice").at("diag").get<std::vector<int>>();
  if (j.contains("j_range")) {
    const auto range = j.at("j_range").get<std::vector<int>>();
    if (range.size() != 2) throw std::invalid_argument("config: j_range must be [j_min, j_max]");
    c.j_min = range[0];
    c.j_max = range[1];
  }
  if (j.contains("p")) {
    c.p.clear();
    const json& ps = j.at("p");
    if (ps.is_array()) {
      for (const auto& v : ps) c.p.push_back(p_from_json(v));
    } else {
      c.p.push_back(p_from_json(ps));
    }
  }
  if (j.contains("test_function")) c.test_function = j.at("test_function");
  c.oversample = j.value("oversample", c.oversample);
  c.seed = j.value("seed", c.seed);
  c.samples.seed = c.seed;
  if (j.contains("comparators")) {
    for (const auto& v : j.at("comparators")) c.comparators.push_back(comparator_from_json(v));
  }
  if (j.contains("symbol")) {
    const json& s = j.at("symbol");
    c.symbol.s = s.value("s", c.symbol.s);
    c.symbol.delta = s.value("delta", c.symbol.delta);
    c.symbol.oversample = s.value("oversample", c.symbol.oversample);
  }
  if (j.contains("samples")) {
    const json& s = j.at("samples");
    c.samples.directions = s.value("directions", c.samples.directions);
    c.samples.magnitudes = s.value("magnitudes", c.samples.magnitudes);
    c.samples.seed = s.value("seed", c.samples.seed);
  }
  validate(c);
  return c;
}

json config_to_json(const ExperimentConfig& c) {
  json ps = json::array();
  for (double p : c.p) ps.push_back(p_to_json(p));
  json comps = json::array();
  for (const auto& comp : c.comparators) comps.push_back({{"kind", comp.kind}, {"order", comp.order}});
  return {
      {"name", c.name},
      {"operator", {{"kernel", kernel_to_json(c.kernel)}, {"functional", functional_to_json(c.functional)}}},
      {"lattice", {{"diag", c.diag}}},
      {"j_range", {c.j_min, c.j_max}},
      {"p", ps},
      {"test_function", c.test_function},
      {"oversample", c.oversample},
      {"seed", c.seed},
      {"comparators", comps},
      {"symbol", {{"s", c.symbol.s}, {"delta", c.symbol.delta}, {"oversample", c.symbol.oversample}}},
      {"samples",
       {{"directions", c.samples.directions},
        {"magnitudes", c.samples.magnitudes},
        {"seed", c.samples.seed}}},
  };
}

std::string config_hash(const ExperimentConfig& config) {
  const std::string text = config_to_json(config).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

SlopeFit fit_decay(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("fit needs matching x and y");
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (y[i] > 0.0 && std::isfinite(y[i])) {
      xs.push_back(x[i]);
      ys.push_back(std::log(y[i]));
    }
  }
  SlopeFit fit;
  fit.points = static_cast<int>(xs.size());
  if (xs.size() < 2) {
    fit.slope = kNaN;
    fit.residual = kNaN;
    return fit;
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i] / n;
    my += ys[i] / n;
  }
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0) {
    fit.slope = kNaN;
    fit.residual = kNaN;
    fit.flagged = true;
    return fit;
  }
  const double b = sxy / sxx;
  fit.slope = -b;
  fit.residual = syy == 0.0 ? 0.0 : 1.0 - (sxy * sxy) / (sxx * syy);
  fit.flagged = fit.residual > kFitResidualLimit;
  return fit;
}

Bracket bracket_of(const std::vector<double>& ratios) {
  Bracket b;
  b.min = kInf;
  b.max = 0.0;
  for (double r : ratios) {
    if (r > 0.0 && std::isfinite(r)) {
      b.min = std::min(b.min, r);
      b.max = std::max(b.max, r);
      ++b.points;
    }
  }
  if (b.points == 0) {
    b.min = b.max = b.spread = kNaN;
    return b;
  }
  b.spread = b.max / b.min;
  return b;
}

ExperimentReport run_rate_study(const ExperimentConfig& config) {
  return run_table(config, config.comparators, "rate");
}

ExperimentReport run_equivalence_study(const ExperimentConfig& config,
                                       const std::optional<ComparatorSpec>& comparator) {
  ComparatorSpec chosen;
  if (comparator) {
    chosen = *comparator;
  } else if (!config.comparators.empty()) {
    chosen = config.comparators.front();
  }
  return run_table(config, {chosen}, "equivalence");
}

ExperimentReport run_symbol_study(const ExperimentConfig& config) {
  validate(config);
  const DilationLattice lattice = config.lattice();
  const SymbolStudySpec& spec = config.symbol;
  const auto levels = config.levels();

  struct Quantity {
    std::string name;
    std::function<double(int)> eval;
  };
  const auto quotient_bound = [&](QuotientDirection dir) {
    return [&, dir](int j) {
      const SymbolFamily q = fractional_condition_symbols(config.kernel, config.functional, lattice,
                                                          spec.s, spec.delta, dir);
      return multiplier_l1_bound(q, lattice, j, spec.oversample);
    };
  };
  const std::vector<Quantity> quantities{
      {"compat-radius",
       [&](int j) { return compat_radius(config.kernel, config.functional, lattice, j); }},
      {"order-" + fmt(spec.s),
       [&](int j) {
         return compat_order_at(config.kernel, config.functional, lattice, j, spec.delta, spec.s);
       }},
      {"order-" + fmt(spec.s + 1),
       [&](int j) {
         return compat_order_at(config.kernel, config.functional, lattice, j, spec.delta, spec.s + 1);
       }},
      {"upper-l1", quotient_bound(QuotientDirection::Upper)},
      {"lower-l1", quotient_bound(QuotientDirection::Lower)},
  };

  struct Value {
    double value;
    std::string note;
  };
  const auto computed = parallel_map(levels.size(), [&](std::size_t i) {
    std::vector<Value> values;
    for (const auto& q : quantities) {
      try {
        values.push_back({q.eval(levels[i]), ""});
      } catch (const SymbolDomainError& e) {
        values.push_back({kNaN, "undefined"});
      }
    }
    return values;
  });

  ExperimentReport report;
  report.study = "symbol";
  report.config = config;
  const double log_step = std::log(static_cast<double>(lattice.det())) / lattice.dim();
  json verdicts = json::object();
  for (std::size_t qi = 0; qi < quantities.size(); ++qi) {
    std::vector<double> x, y;
    for (std::size_t i = 0; i < levels.size(); ++i) {
      x.push_back(levels[i] * log_step);
      y.push_back(computed[i][qi].value);
    }
    SlopeFit fit = fit_decay(x, y);
    fit.p = kNaN;
    fit.series = quantities[qi].name;
    Bracket b = bracket_of(y);
    b.p = kNaN;
    b.series = quantities[qi].name;
    for (std::size_t i = 0; i < levels.size(); ++i) {
      const Value& v = computed[i][qi];
      std::string tag = quantities[qi].name;
      if (!v.note.empty()) tag += ":" + v.note;
      report.rows.push_back({levels[i], kNaN, v.value, "exact", "", kNaN, "", kNaN, fit.slope, tag});
    }
    report.fits.push_back(fit);
    report.brackets.push_back(b);
    const double first = y.front();
    const double last = y.back();
    verdicts[quantities[qi].name] = {
        {"stable_within_2", b.points > 0 && b.spread <= 2.0},
        {"growth_last_over_first", first > 0.0 ? last / first : kNaN},
    };
  }
  report.metadata = {{"s", spec.s}, {"delta", spec.delta}, {"verdicts", verdicts}};
  return report;
}

std::vector<std::string> reproduction_names() { return {"e1", "e2", "e3", "e4", "e5", "e6"}; }

std::pair<ExperimentConfig, std::string> reproduction_config(const std::string& name) {
  ExperimentConfig c;
  c.name = name;
  c.diag = {2};
  c.j_min = 3;
  c.j_max = 8;
  c.p = {2.0};
  c.oversample = 16;
  c.seed = 1;
  if (name == "e1") {
    c.kernel = Dirichlet{};
    c.functional = Delta{};
    c.test_function = {{"type", "power"}, {"alpha", 2.5}, {"K", 512}};
    c.comparators = {{"E", 0.0}};
    return {c, "equivalence"};
  }
  if (name == "e2") {
    c.kernel = CorrectedDirichlet{0.5};
    c.functional = Average{0.5};
    c.test_function = {{"type", "power"}, {"alpha", 2.5}, {"K", 512}};
    c.comparators = {{"E", 0.0}};
    return {c, "equivalence"};
  }
  if (name == "e3") {
    c.kernel = Dirichlet{};
    c.functional = Average{0.5};
    c.test_function = {{"type", "power"}, {"alpha", 2.0}, {"K", 512}};
    c.symbol = {2.0, 0.45, 8};
    return {c, "symbol"};
  }
  if (name == "e4") {
    c.kernel = Dirichlet{};
    c.functional = Average{0.5};
    c.test_function = {{"type", "power"}, {"alpha", 2.0}, {"K", 512}};
    c.comparators = {{"Omega", 2.0}};
    return {c, "equivalence"};
  }
  if (name == "e5") {
    c.kernel = Dirichlet{};
    c.functional = DiscreteWeights{{0.25, 0.5, 0.25}, {{-1}, {0}, {1}}};
    c.test_function = {{"type", "power"}, {"alpha", 2.0}, {"K", 512}};
    c.comparators = {{"Omega", 2.0}};
    return {c, "equivalence"};
  }
  if (name == "e6") {
    c.kernel = Riesz{1.5, 1.0};
    c.functional = Average{0.5};
    c.test_function = {{"type", "power"}, {"alpha", 1.8}, {"K", 512}};
    c.comparators = {{"K", 1.5}};
    return {c, "equivalence"};
  }
  throw std::invalid_argument("unknown reproduction \"" + name + "\"");
}

ExperimentReport run_reproduction(const std::string& name) {
  const auto [config, kind] = reproduction_config(name);
  if (kind == "symbol") return run_symbol_study(config);
  if (kind == "rate") return run_rate_study(config);
  return run_equivalence_study(config);
}

}  // namespace qi
