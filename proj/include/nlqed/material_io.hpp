#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "json.hpp"

#include "nlqed/geometry.hpp"
#include "nlqed/materials.hpp"

namespace nlqed {

/// Material description:
///   {"permittivity": {"model": "lorentz", "background": 2.0,
///                     "oscillators": [{"wp2": 2.0, "w0": 3.0, "gamma": 0.2}]}
///                  | {"model": "table", "file": "eps.csv"}
///                  | {"model": "vacuum"},
///    "chi2": {"kind": "zero"} | {"kind": "constant", "re": 1.0, "im": 0.0}
///          | {"kind": "miller", "delta": 0.1}}
/// Relative table paths resolve against `base_dir`. Throws Config on bad input.
Material material_from_json(const std::string& name, const nlohmann::json& spec,
                            const std::filesystem::path& base_dir);

/// CSV with a header line and columns omega, re_eps, im_eps.
PermittivityModel load_permittivity_table(const std::filesystem::path& path);

/// {"domain": X, "layers": [{"from": 0, "to": X, "material": "name"}, ...]}
Geometry1D geometry_from_json(const nlohmann::json& spec, const std::map<std::string, Material>& materials);

}  // namespace nlqed
