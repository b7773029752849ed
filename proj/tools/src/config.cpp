#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "chiralret/cli.hpp"
#include "chiralret/errors.hpp"

namespace chiralret::cli {

using nlohmann::json;

namespace {

std::string describe(const std::string& source, std::size_t line, std::size_t column,
                     const std::string& detail) {
  std::ostringstream os;
  os << source << ':' << line << ':' << column << ": " << detail;
  return os.str();
}

void only_keys(const json& obj, const std::string& where,
               std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    const bool ok = std::any_of(allowed.begin(), allowed.end(),
                                [&](const char* k) { return it.key() == k; });
    if (!ok) throw ValidationError(where + it.key(), "unknown key");
  }
}

const json& need(const json& obj, const std::string& where, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(where + key, "missing");
  return *it;
}

double number(const json& v, const std::string& field) {
  if (!v.is_number()) throw ValidationError(field, "must be a number");
  return v.get<double>();
}

double number_or(const json& obj, const std::string& where, const char* key, double fallback) {
  auto it = obj.find(key);
  return it == obj.end() ? fallback : number(*it, where + key);
}

std::string text(const json& v, const std::string& field) {
  if (!v.is_string()) throw ValidationError(field, "must be a string");
  return v.get<std::string>();
}

const json& object(const json& v, const std::string& field) {
  if (!v.is_object()) throw ValidationError(field, "must be an object");
  return v;
}

Handedness parse_handedness(const json& v, const std::string& field) {
  const std::string s = text(v, field);
  if (s == "left") return Handedness::left;
  if (s == "right") return Handedness::right;
  throw ValidationError(field, "must be \"left\" or \"right\" (model achiral molecules with "
                               "cos_theta = 0)");
}

Molecule parse_molecule(const std::string& name, const json& v) {
  const std::string where = "molecules." + name + ".";
  object(v, "molecules." + name);
  only_keys(v, where, {"d_e_Cm", "d_m_Cm", "cos_theta", "handedness", "omega0_rad_s"});
  const double d_e = number(need(v, where, "d_e_Cm"), where + "d_e_Cm");
  const double d_m = number(need(v, where, "d_m_Cm"), where + "d_m_Cm");
  const double ct = number(need(v, where, "cos_theta"), where + "cos_theta");
  const Handedness h = parse_handedness(need(v, where, "handedness"), where + "handedness");
  const double w = number(need(v, where, "omega0_rad_s"), where + "omega0_rad_s");
  try {
    return make_molecule(name, d_e, d_m, ct, h, w);
  } catch (const ValidationError& e) {
    std::string msg = e.what();
    msg.erase(0, e.field().size() + 2);
    throw ValidationError(where + e.field(), msg);
  }
}

Medium parse_medium(const json& v) {
  if (v.is_string()) return reference_medium(v.get<std::string>());
  object(v, "medium");
  const std::string where = "medium.";
  if (v.contains("n_re") || v.contains("n_im")) {
    only_keys(v, where, {"n_re", "n_im"});
    const double re = number(need(v, where, "n_re"), "medium.n_re");
    const double im = number_or(v, where, "n_im", 0.0);
    return medium_from_index(cplx{re, im});
  }
  only_keys(v, where, {"eps_re", "eps_im", "mu_re", "mu_im"});
  const double er = number(need(v, where, "eps_re"), "medium.eps_re");
  const double ei = number_or(v, where, "eps_im", 0.0);
  const double mr = number_or(v, where, "mu_re", 1.0);
  const double mi = number_or(v, where, "mu_im", 0.0);
  if (er == 1.0 && ei == 0.0 && mr == 1.0 && mi == 0.0) return Medium::vacuum();
  return make_medium(cplx{er, ei}, cplx{mr, mi});
}

Constants parse_constants(const json& v) {
  object(v, "constants");
  only_keys(v, "constants.", {"c", "eps0", "mu0", "hbar"});
  Constants k{number(need(v, "constants.", "c"), "constants.c"),
              number(need(v, "constants.", "eps0"), "constants.eps0"),
              number(need(v, "constants.", "mu0"), "constants.mu0"),
              number(need(v, "constants.", "hbar"), "constants.hbar")};
  k.validate();
  return k;
}

std::string pick_molecule(const json& root, const RunConfig& cfg, const char* key) {
  auto it = root.find(key);
  if (it == root.end()) {
    if (cfg.molecules.size() == 1) return cfg.molecules.begin()->first;
    throw ValidationError(key, "required when more than one molecule is defined");
  }
  const std::string name = text(*it, key);
  if (!cfg.molecules.count(name)) throw ValidationError(key, "unknown molecule '" + name + "'");
  return name;
}

}  // namespace

ConfigParseError::ConfigParseError(const std::string& source, std::size_t line, std::size_t column,
                                   const std::string& detail)
    : std::runtime_error(describe(source, line, column, detail)), line_(line), column_(column) {}

TransferConfig RunConfig::transfer(double r) const {
  return make_transfer_config(donor_molecule(), acceptor_molecule(), r, medium, lfc, variant,
                              constants);
}

RunConfig parse_config_text(const std::string& text_in, const std::string& source) {
  json root;
  try {
    root = json::parse(text_in);
  } catch (const json::parse_error& e) {
    // e.byte is 1-based and points just past the offending character.
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text_in.size());
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < end; ++i) {
      if (text_in[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ConfigParseError(source, line, column, e.what());
  }

  object(root, "<root>");
  only_keys(root, "", {"constants", "molecules", "donor", "acceptor", "medium", "lfc", "variant",
                       "separation_m", "media"});

  RunConfig cfg;
  if (auto it = root.find("constants"); it != root.end()) cfg.constants = parse_constants(*it);

  const json& mols = object(need(root, "", "molecules"), "molecules");
  if (mols.empty()) throw ValidationError("molecules", "must define at least one molecule");
  for (auto it = mols.begin(); it != mols.end(); ++it)
    cfg.molecules.emplace(it.key(), parse_molecule(it.key(), it.value()));
  cfg.donor = pick_molecule(root, cfg, "donor");
  cfg.acceptor = pick_molecule(root, cfg, "acceptor");
  if (cfg.donor_molecule().omega0() != cfg.acceptor_molecule().omega0())
    throw ValidationError("omega0_rad_s", "donor and acceptor frequencies must be equal");

  if (auto it = root.find("medium"); it != root.end()) cfg.medium = parse_medium(*it);

  if (auto it = root.find("lfc"); it != root.end()) {
    const std::string s = text(*it, "lfc");
    if (s == "off") cfg.lfc = LocalField::off;
    else if (s == "onsager") cfg.lfc = LocalField::onsager;
    else throw ValidationError("lfc", "must be \"off\" or \"onsager\"");
  }
  if (auto it = root.find("variant"); it != root.end()) {
    const std::string s = text(*it, "variant");
    if (s == "product_consistent") cfg.variant = ClosedFormVariant::product_consistent;
    else if (s == "as_printed") cfg.variant = ClosedFormVariant::as_printed;
    else throw ValidationError("variant", "must be \"product_consistent\" or \"as_printed\"");
  }
  if (auto it = root.find("separation_m"); it != root.end()) {
    const double r = number(*it, "separation_m");
    if (!(r > 0.0) || !std::isfinite(r)) throw ValidationError("separation_m", "must be > 0");
    cfg.separation_m = r;
  }
  if (auto it = root.find("media"); it != root.end()) {
    if (!it->is_array()) throw ValidationError("media", "must be an array");
    cfg.media.clear();
    std::size_t i = 0;
    for (const json& m : *it) {
      const std::string where = "media[" + std::to_string(i++) + "].";
      object(m, where);
      only_keys(m, where, {"name", "n_re", "n_im"});
      const cplx n{number(need(m, where, "n_re"), where + "n_re"),
                   number_or(m, where, "n_im", 0.0)};
      medium_from_index(n);  // validates passivity
      cfg.media.push_back({text(need(m, where, "name"), where + "name"), n});
    }
  }
  return cfg;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("config", "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path);
}

}  // namespace chiralret::cli
