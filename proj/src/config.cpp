#include "spinsim/config.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace spinsim::config {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
  throw std::invalid_argument(origin + ":" + std::to_string(line) + ": " + msg);
}

double to_double(const std::string& v, const std::string& origin, int line) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return x;
  } catch (...) {
    fail(origin, line, "expected a number, got '" + v + "'");
  }
}

int to_int(const std::string& v, const std::string& origin, int line) {
  try {
    std::size_t pos = 0;
    const int x = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return x;
  } catch (...) {
    fail(origin, line, "expected an integer, got '" + v + "'");
  }
}

Eigen::Vector3d to_vec3(const std::string& v, const std::string& origin, int line) {
  std::stringstream ss(v);
  std::string item;
  Eigen::Vector3d out;
  int i = 0;
  while (std::getline(ss, item, ',')) {
    if (i >= 3) fail(origin, line, "expected 3 comma-separated components");
    out(i++) = to_double(trim(item), origin, line);
  }
  if (i != 3) fail(origin, line, "expected 3 comma-separated components");
  return out;
}

}  // namespace

lattice::LatticeSpec RunConfig::lattice_spec() const {
  lattice::LatticeSpec s;
  s.structure = structure;
  s.field_dir = field_dir;
  s.r_max = r_max;
  return s;
}

lattice::LatticeSpec RunConfig::fcc_spec() const {
  lattice::LatticeSpec s = lattice_spec();
  s.structure = lattice::Structure::FccSingleSpecies;
  return s;
}

void RunConfig::validate() const {
  lattice_spec().validate();
  if (species_I.gamma <= 0.0 || species_S.gamma <= 0.0)
    throw std::invalid_argument("gamma must be positive");
  if (adrf_polarization < 0.0 || adrf_polarization >= 1.0)
    throw std::invalid_argument("polarization must lie in [0, 1)");
  if (adrf_points < 2) throw std::invalid_argument("adrf points must be >= 2");
  if (adrf_species != 'I' && adrf_species != 'S')
    throw std::invalid_argument("adrf species must be I or S");
  if (bz_grid < 2) throw std::invalid_argument("meanfield grid must be >= 2");
  if (format != "csv" && format != "json")
    throw std::invalid_argument("format must be csv or json");
  if (aht_coupling != "ising" && aht_coupling != "secular")
    throw std::invalid_argument("aht coupling must be ising or secular");
  if (!(shell_tolerance > 0.0))
    throw std::invalid_argument("shell tolerance must be positive");
}

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;

  auto key_of = [&](const std::string& key) { return section + "." + key; };

  std::map<std::string, std::pair<std::string, int>> kv;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(origin, lineno, "malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(origin, lineno, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty()) fail(origin, lineno, "expected key = value");
    if (section.empty()) fail(origin, lineno, "key outside any [section]");
    if (kv.count(key_of(key))) fail(origin, lineno, "duplicate key '" + key + "'");
    kv[key_of(key)] = {val, lineno};
  }

  const std::set<std::string> known = {
      "lattice.structure", "lattice.field", "lattice.r_max",
      "species.I.spin", "species.I.gamma", "species.I.name",
      "species.S.spin", "species.S.gamma", "species.S.name",
      "hte.order", "hte.eta", "hte.beta",
      "adrf.polarization", "adrf.points", "adrf.species",
      "aht.sequence", "aht.tau", "aht.coupling",
      "meanfield.pumping", "meanfield.grid", "meanfield.dump_bz",
      "validate.cluster", "validate.halvings",
      "output.dir", "output.format",
      "tolerance.shell_sum"};
  for (const auto& [k, v] : kv)
    if (!known.count(k))
      fail(origin, v.second, "unknown key '" + k + "'");

  auto take = [&](const std::string& k) -> const std::pair<std::string, int>* {
    const auto it = kv.find(k);
    return it == kv.end() ? nullptr : &it->second;
  };

  if (auto* v = take("lattice.structure")) {
    if (v->first == "fcc") cfg.structure = lattice::Structure::FccSingleSpecies;
    else if (v->first == "zincblende") cfg.structure = lattice::Structure::ZincblendeTwoSpecies;
    else fail(origin, v->second, "structure must be fcc or zincblende");
  }
  if (auto* v = take("lattice.field"))
    cfg.field_dir = to_vec3(v->first, origin, v->second).normalized();
  if (auto* v = take("lattice.r_max")) cfg.r_max = to_double(v->first, origin, v->second);

  auto species = [&](const char* which, lattice::SpeciesSpec& sp) {
    const std::string base = std::string("species.") + which + ".";
    if (auto* v = take(base + "spin")) {
      const double j = to_double(v->first, origin, v->second);
      try {
        sp.j = Spin(j);
      } catch (const std::exception& e) {
        fail(origin, v->second, e.what());
      }
    }
    if (auto* v = take(base + "gamma")) {
      sp.gamma = to_double(v->first, origin, v->second);
      if (sp.gamma <= 0.0) fail(origin, v->second, "gamma must be positive");
    }
    if (auto* v = take(base + "name")) sp.name = v->first;
  };
  species("I", cfg.species_I);
  species("S", cfg.species_S);

  if (auto* v = take("hte.order")) {
    try {
      cfg.order = hte::order_from_name(v->first);
    } catch (const std::exception& e) {
      fail(origin, v->second, e.what());
    }
  }
  if (auto* v = take("hte.eta")) cfg.hte_eta = to_double(v->first, origin, v->second);
  if (auto* v = take("hte.beta")) cfg.hte_beta = to_double(v->first, origin, v->second);

  if (auto* v = take("adrf.polarization")) {
    cfg.adrf_polarization = to_double(v->first, origin, v->second);
    if (cfg.adrf_polarization < 0.0 || cfg.adrf_polarization >= 1.0)
      fail(origin, v->second, "polarization must lie in [0, 1)");
  }
  if (auto* v = take("adrf.points")) cfg.adrf_points = to_int(v->first, origin, v->second);
  if (auto* v = take("adrf.species")) {
    if (v->first != "I" && v->first != "S") fail(origin, v->second, "species must be I or S");
    cfg.adrf_species = v->first[0];
  }

  if (auto* v = take("aht.sequence")) cfg.aht_sequence = v->first;
  if (auto* v = take("aht.tau")) cfg.aht_tau = to_double(v->first, origin, v->second);
  if (auto* v = take("aht.coupling")) cfg.aht_coupling = v->first;

  if (auto* v = take("meanfield.pumping")) {
    if (v->first == "optical") cfg.pumping = meanfield::Pumping::Optical;
    else if (v->first == "common-beta") cfg.pumping = meanfield::Pumping::CommonBeta;
    else fail(origin, v->second, "pumping must be optical or common-beta");
  }
  if (auto* v = take("meanfield.grid")) cfg.bz_grid = to_int(v->first, origin, v->second);
  if (auto* v = take("meanfield.dump_bz"))
    cfg.dump_bz = v->first == "true" || v->first == "1";

  if (auto* v = take("validate.cluster")) cfg.validate_cluster = v->first;
  if (auto* v = take("validate.halvings"))
    cfg.validate_halvings = to_int(v->first, origin, v->second);

  if (auto* v = take("output.dir")) cfg.out_dir = v->first;
  if (auto* v = take("output.format")) cfg.format = v->first;
  if (auto* v = take("tolerance.shell_sum"))
    cfg.shell_tolerance = to_double(v->first, origin, v->second);

  cfg.validate();
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str(), path);
}

}  // namespace spinsim::config
