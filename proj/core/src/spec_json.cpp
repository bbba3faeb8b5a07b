#include "qi/spec_json.hpp"

#include <stdexcept>

namespace qi {

using nlohmann::json;

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

const json& params_of(const json& j) {
  static const json empty = json::object();
  if (!j.is_object() || !j.contains("variant")) {
    throw std::invalid_argument("spec must be an object with a \"variant\" field");
  }
  auto it = j.find("params");
  return it == j.end() ? empty : *it;
}

double number(const json& params, const char* key) {
  if (!params.contains(key) || !params.at(key).is_number()) {
    throw std::invalid_argument(std::string("missing numeric parameter \"") + key + "\"");
  }
  return params.at(key).get<double>();
}

}  // namespace

json functional_to_json(const FunctionalSpec& spec) {
  return std::visit(
      Overloaded{
          [](const Delta&) { return json{{"variant", "Delta"}, {"params", json::object()}}; },
          [](const Average& a) {
            return json{{"variant", "Average"}, {"params", {{"sigma", a.sigma}}}};
          },
          [](const DiscreteWeights& w) {
            return json{{"variant", "DiscreteWeights"},
                        {"params", {{"weights", w.weights}, {"shifts", w.shifts}}}};
          },
          [](const DifferentialSymbol& ds) {
            json terms = json::array();
            for (const auto& t : ds.terms) {
              terms.push_back({{"beta", t.beta}, {"re", t.coeff.real()}, {"im", t.coeff.imag()}});
            }
            return json{{"variant", "DifferentialSymbol"}, {"params", {{"terms", terms}}}};
          },
      },
      spec);
}

FunctionalSpec functional_from_json(const json& j) {
  const json& params = params_of(j);
  const std::string variant = j.at("variant").get<std::string>();
  if (variant == "Delta") return Delta{};
  if (variant == "Average") return Average{number(params, "sigma")};
  if (variant == "DiscreteWeights") {
    DiscreteWeights w;
    w.weights = params.at("weights").get<std::vector<double>>();
    for (const auto& tau : params.at("shifts")) {
      w.shifts.push_back(tau.is_array() ? tau.get<Index>() : Index{tau.get<std::int64_t>()});
    }
    return w;
  }
  if (variant == "DifferentialSymbol") {
    DifferentialSymbol ds;
    for (const auto& t : params.at("terms")) {
      ds.terms.push_back({t.at("beta").get<std::vector<int>>(),
                          Complex(t.value("re", 0.0), t.value("im", 0.0))});
    }
    return ds;
  }
  throw std::invalid_argument("unknown functional variant \"" + variant + "\"");
}

json kernel_to_json(const KernelSpec& spec) {
  return std::visit(
      Overloaded{
          [](const Dirichlet&) { return json{{"variant", "Dirichlet"}, {"params", json::object()}}; },
          [](const ValleePoussin&) {
            return json{{"variant", "ValleePoussin"}, {"params", json::object()}};
          },
          [](const CorrectedDirichlet& c) {
            return json{{"variant", "CorrectedDirichlet"}, {"params", {{"sigma", c.sigma}}}};
          },
          [](const Riesz& r) {
            return json{{"variant", "Riesz"}, {"params", {{"s", r.s}, {"gamma", r.gamma}}}};
          },
          [](const DualDirichlet& dd) {
            return json{{"variant", "DualDirichlet"},
                        {"params", {{"functional", functional_to_json(dd.functional)}}}};
          },
      },
      spec);
}

KernelSpec kernel_from_json(const json& j) {
  const json& params = params_of(j);
  const std::string variant = j.at("variant").get<std::string>();
  if (variant == "Dirichlet") return Dirichlet{};
  if (variant == "ValleePoussin") return ValleePoussin{};
  if (variant == "CorrectedDirichlet") return CorrectedDirichlet{number(params, "sigma")};
  if (variant == "Riesz") return Riesz{number(params, "s"), number(params, "gamma")};
  if (variant == "DualDirichlet") return DualDirichlet{functional_from_json(params.at("functional"))};
  throw std::invalid_argument("unknown kernel variant \"" + variant + "\"");
}

json spectral_to_json(const SpectralFunction& f) {
  json coeffs = json::array();
  for (const auto& [k, c] : f.coeffs()) {
    coeffs.push_back({{"k", k}, {"re", c.real()}, {"im", c.imag()}});
  }
  return {{"d", f.dim()}, {"coeffs", coeffs}};
}

SpectralFunction spectral_from_json(const json& j) {
  SpectralFunction f(j.at("d").get<int>());
  for (const auto& entry : j.at("coeffs")) {
    f.add(entry.at("k").get<Index>(), Complex(entry.value("re", 0.0), entry.value("im", 0.0)));
  }
  return f;
}

}  // namespace qi
