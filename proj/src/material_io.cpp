#include "nlqed/material_io.hpp"

#include <fstream>
#include <sstream>

namespace nlqed {

namespace {

double number(const nlohmann::json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw Error(ErrorKind::Config, where + ": missing numeric field '" + key + "'");
  }
  return j.at(key).get<double>();
}

double number_or(const nlohmann::json& j, const char* key, double fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw Error(ErrorKind::Config, where + ": field '" + key + "' must be a number");
  return j.at(key).get<double>();
}

}  // namespace

PermittivityModel load_permittivity_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Config, "cannot open permittivity table " + path.string());
  std::vector<double> omega;
  std::vector<Complex> eps;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    for (char& c : line) {
      if (c == ',') c = ' ';
    }
    std::istringstream row(line);
    double w, re, im;
    if (!(row >> w >> re >> im)) {
      if (omega.empty() && lineno == 1) continue;  // header
      throw Error(ErrorKind::Config, path.string() + ":" + std::to_string(lineno) + ": expected omega,re,im");
    }
    omega.push_back(w);
    eps.emplace_back(re, im);
  }
  try {
    return PermittivityModel::tabulated(std::move(omega), std::move(eps));
  } catch (const Error& e) {
    throw Error(ErrorKind::Config, path.string() + ": " + e.what());
  }
}

Material material_from_json(const std::string& name, const nlohmann::json& spec,
                            const std::filesystem::path& base_dir) {
  const std::string where = "material '" + name + "'";
  if (!spec.is_object()) throw Error(ErrorKind::Config, where + " must be an object");
  Material m;
  m.name = name;

  const nlohmann::json perm = spec.value("permittivity", nlohmann::json::object());
  const std::string model = perm.value("model", std::string("lorentz"));
  try {
    if (model == "vacuum") {
      m.permittivity = PermittivityModel::vacuum();
    } else if (model == "lorentz") {
      std::vector<LorentzOscillator> osc;
      if (perm.contains("oscillators")) {
        if (!perm.at("oscillators").is_array()) throw Error(ErrorKind::Config, where + ": oscillators must be a list");
        for (const auto& o : perm.at("oscillators")) {
          osc.push_back({number(o, "wp2", where), number(o, "w0", where), number(o, "gamma", where)});
        }
      }
      m.permittivity = PermittivityModel::lorentz(number_or(perm, "background", 1.0, where), std::move(osc));
    } else if (model == "table") {
      if (!perm.contains("file") || !perm.at("file").is_string()) {
        throw Error(ErrorKind::Config, where + ": table model needs a 'file'");
      }
      std::filesystem::path file = perm.at("file").get<std::string>();
      if (file.is_relative()) file = base_dir / file;
      m.permittivity = load_permittivity_table(file);
    } else {
      throw Error(ErrorKind::Config, where + ": unknown permittivity model '" + model + "'");
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Config) throw;
    throw Error(ErrorKind::Config, where + ": " + e.what());
  }

  const nlohmann::json chi = spec.value("chi2", nlohmann::json::object());
  const std::string kind = chi.value("kind", std::string("zero"));
  if (kind == "zero") {
    m.chi2 = Chi2Model::zero();
  } else if (kind == "constant") {
    m.chi2 = Chi2Model::constant({number_or(chi, "re", 0.0, where), number_or(chi, "im", 0.0, where)});
  } else if (kind == "miller") {
    m.chi2 = Chi2Model::miller(number(chi, "delta", where), m.permittivity);
  } else {
    throw Error(ErrorKind::Config, where + ": unknown chi2 kind '" + kind + "'");
  }
  return m;
}

Geometry1D geometry_from_json(const nlohmann::json& spec, const std::map<std::string, Material>& materials) {
  const std::string where = "geometry";
  if (!spec.is_object()) throw Error(ErrorKind::Config, "geometry must be an object");
  const double domain = number(spec, "domain", where);
  if (!spec.contains("layers") || !spec.at("layers").is_array() || spec.at("layers").empty()) {
    throw Error(ErrorKind::Config, "geometry needs a non-empty 'layers' list");
  }
  std::vector<Layer> layers;
  for (const auto& l : spec.at("layers")) {
    const std::string name = l.value("material", std::string());
    const auto it = materials.find(name);
    if (it == materials.end()) throw Error(ErrorKind::Config, "geometry refers to unknown material '" + name + "'");
    layers.push_back({number(l, "from", where), number(l, "to", where), it->second});
  }
  try {
    return Geometry1D(domain, std::move(layers));
  } catch (const Error& e) {
    throw Error(ErrorKind::Config, std::string("geometry: ") + e.what());
  }
}

}  // namespace nlqed
