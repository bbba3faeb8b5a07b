#pragma once

#include <json.hpp>

#include "qi/kernels.hpp"
#include "qi/spectrum.hpp"

namespace qi {

/// {"variant": "...", "params": {...}}
nlohmann::json kernel_to_json(const KernelSpec& spec);
KernelSpec kernel_from_json(const nlohmann::json& j);

nlohmann::json functional_to_json(const FunctionalSpec& spec);
FunctionalSpec functional_from_json(const nlohmann::json& j);

/// {"d": int, "coeffs": [{"k": [ints], "re": float, "im": float}]}
nlohmann::json spectral_to_json(const SpectralFunction& f);
SpectralFunction spectral_from_json(const nlohmann::json& j);

}  // namespace qi
