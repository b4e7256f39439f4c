#include "cars/model_io.hpp"

#include <cmath>
#include <fstream>
#include <span>
#include <sstream>

#include "cars/errors.hpp"

namespace cars {
namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

[[noreturn]] void schema(const std::string& path, const std::string& what) {
  throw SchemaError(path + ": " + what);
}

std::string child(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string child(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const json& require(const json& obj, const std::string& key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) schema(child(path, key), "missing required field");
  return *it;
}

const json* optional_field(const json& obj, const std::string& key) {
  auto it = obj.find(key);
  return it == obj.end() || it->is_null() ? nullptr : &*it;
}

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) schema(path.empty() ? "(root)" : path, "expected an object");
}

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed, const std::string& path) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) schema(child(path, it.key()), "unknown field");
  }
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) schema(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) schema(path, "number is not finite");
  return v;
}

std::string text(const json& j, const std::string& path) {
  if (!j.is_string()) schema(path, "expected a string");
  return j.get<std::string>();
}

template <std::size_t N>
std::array<double, N> numbers(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != N) schema(path, "expected an array of " + std::to_string(N) + " numbers");
  std::array<double, N> out{};
  for (std::size_t i = 0; i < N; ++i) out[i] = number(j[i], child(path, i));
  return out;
}

std::vector<std::string> strings(const json& j, const std::string& path) {
  if (!j.is_array()) schema(path, "expected an array of level ids");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(text(j[i], child(path, i)));
  return out;
}

Constants parse_constants(const json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown(j, {"c", "units"}, path);
  Constants c;
  if (const json* v = optional_field(j, "c")) {
    c.c = number(*v, child(path, "c"));
    if (!(c.c > 0.0)) schema(child(path, "c"), "speed of light must be positive");
  }
  if (const json* v = optional_field(j, "units")) {
    c.units = text(*v, child(path, "units"));
    if (c.units != "atomic") schema(child(path, "units"), "only \"atomic\" units are supported");
  }
  return c;
}

ScanGrid parse_scan(const json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown(j, {"start", "stop", "step"}, path);
  ScanGrid g{number(require(j, "start", path), child(path, "start")),
             number(require(j, "stop", path), child(path, "stop")),
             number(require(j, "step", path), child(path, "step"))};
  try {
    g.validate();
  } catch (const ValidationError& e) {
    schema(path, e.what());
  }
  return g;
}

BeamsBlock parse_beams(const json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown(j, {"omega1", "omega2", "omega3", "scan"}, path);
  BeamsBlock b;
  auto positive = [&](const char* key, std::optional<double>& slot) {
    if (const json* v = optional_field(j, key)) {
      slot = number(*v, child(path, key));
      if (!(*slot > 0.0)) schema(child(path, key), "frequency must be positive");
    }
  };
  positive("omega1", b.omega1);
  positive("omega2", b.omega2);
  positive("omega3", b.omega3);
  if (const json* v = optional_field(j, "scan")) b.scan = parse_scan(*v, child(path, "scan"));
  return b;
}

Mode parse_mode(const json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown(j, {"name", "shift_cm1", "alpha34", "alpha12", "gprime34", "a34", "gprime12", "a12"}, path);
  Mode m;
  m.name = text(require(j, "name", path), child(path, "name"));
  m.shift_cm1 = number(require(j, "shift_cm1", path), child(path, "shift_cm1"));
  const std::string label = path + " (" + m.name + ")";
  m.tensors.alpha34 = SymRank2(numbers<9>(require(j, "alpha34", path), child(path, "alpha34")), label + ".alpha34");
  m.tensors.alpha12 = SymRank2(numbers<9>(require(j, "alpha12", path), child(path, "alpha12")), label + ".alpha12");
  if (const json* v = optional_field(j, "gprime34")) m.tensors.gprime34 = Rank2(numbers<9>(*v, child(path, "gprime34")));
  if (const json* v = optional_field(j, "a34"))
    m.tensors.a34 = Rank3SymLast(numbers<27>(*v, child(path, "a34")), label + ".a34");
  if (const json* v = optional_field(j, "gprime12")) m.tensors.gprime12 = Rank2(numbers<9>(*v, child(path, "gprime12")));
  if (const json* v = optional_field(j, "a12"))
    m.tensors.a12 = Rank3SymLast(numbers<27>(*v, child(path, "a12")), label + ".a12");
  return m;
}

template <typename Setter>
void parse_moments(const json& obj, const char* key, const std::string& path, Setter&& set) {
  const json* list = optional_field(obj, key);
  if (!list) return;
  const std::string lp = child(path, key);
  if (!list->is_array()) schema(lp, "expected an array of {bra, ket, value} entries");
  for (std::size_t i = 0; i < list->size(); ++i) {
    const json& e = (*list)[i];
    const std::string ep = child(lp, i);
    require_object(e, ep);
    reject_unknown(e, {"bra", "ket", "value"}, ep);
    const std::string bra = text(require(e, "bra", ep), child(ep, "bra"));
    const std::string ket = text(require(e, "ket", ep), child(ep, "ket"));
    set(bra, ket, require(e, "value", ep), child(ep, "value"));
  }
}

MolecularModel parse_states(const json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown(j, {"levels", "dipoles", "magnetic", "quadrupoles", "roles"}, path);
  MolecularModel m;
  const json& levels = require(j, "levels", path);
  const std::string lp = child(path, "levels");
  if (!levels.is_array() || levels.empty()) schema(lp, "expected a non-empty array of levels");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const std::string ep = child(lp, i);
    require_object(levels[i], ep);
    reject_unknown(levels[i], {"id", "energy"}, ep);
    const std::string id = text(require(levels[i], "id", ep), child(ep, "id"));
    if (m.has_level(id)) schema(child(ep, "id"), "duplicate level id '" + id + "'");
    m.add_level(id, number(require(levels[i], "energy", ep), child(ep, "energy")));
  }
  auto known = [&](const std::string& id, const std::string& p) {
    if (!m.has_level(id)) throw RoleError(p + ": unknown level '" + id + "'");
  };
  parse_moments(j, "dipoles", path, [&](const std::string& b, const std::string& k, const json& v, const std::string& p) {
    known(b, p);
    known(k, p);
    m.set_dipole(b, k, numbers<3>(v, p));
  });
  parse_moments(j, "magnetic", path, [&](const std::string& b, const std::string& k, const json& v, const std::string& p) {
    known(b, p);
    known(k, p);
    m.set_magnetic(b, k, numbers<3>(v, p));
  });
  parse_moments(j, "quadrupoles", path,
                [&](const std::string& b, const std::string& k, const json& v, const std::string& p) {
                  known(b, p);
                  known(k, p);
                  m.set_quadrupole(b, k, numbers<9>(v, p));
                });

  const std::string rp = child(path, "roles");
  const json& roles = require(j, "roles", path);
  require_object(roles, rp);
  reject_unknown(roles, {"g", "s", "f", "t", "r"}, rp);
  m.roles.ground = text(require(roles, "g", rp), child(rp, "g"));
  m.roles.excited = text(require(roles, "s", rp), child(rp, "s"));
  m.roles.final_state = text(require(roles, "f", rp), child(rp, "f"));
  m.roles.pump_intermediates = strings(require(roles, "t", rp), child(rp, "t"));
  m.roles.probe_intermediates = strings(require(roles, "r", rp), child(rp, "r"));
  m.validate();
  return m;
}

ojson array_of(std::span<const double> v) {
  ojson a = ojson::array();
  for (double x : v) a.push_back(x);
  return a;
}

}  // namespace

ModelFile parse_model(std::string_view bytes) {
  json root;
  try {
    root = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
  require_object(root, "");
  reject_unknown(root, {"constants", "beams", "modes", "states"}, "");

  ModelFile out;
  if (const json* c = optional_field(root, "constants")) out.constants = parse_constants(*c, "constants");
  if (const json* b = optional_field(root, "beams")) out.beams = parse_beams(*b, "beams");

  const json* modes = optional_field(root, "modes");
  const json* states = optional_field(root, "states");
  if ((modes != nullptr) == (states != nullptr))
    schema("(root)", "exactly one of \"modes\" (tensor form) or \"states\" (states form) is required");
  if (modes) {
    if (!modes->is_array() || modes->empty()) schema("modes", "expected a non-empty array of modes");
    for (std::size_t i = 0; i < modes->size(); ++i) out.modes.push_back(parse_mode((*modes)[i], child("modes", i)));
  } else {
    out.states = parse_states(*states, "states");
  }
  return out;
}

ModelFile load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open model file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_model(buf.str());
  } catch (const SchemaError& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
}

ojson to_json(const ModelFile& model) {
  ojson root;
  root["constants"] = {{"c", model.constants.c}, {"units", model.constants.units}};
  ojson beams = ojson::object();
  if (model.beams.omega1) beams["omega1"] = *model.beams.omega1;
  if (model.beams.omega2) beams["omega2"] = *model.beams.omega2;
  if (model.beams.omega3) beams["omega3"] = *model.beams.omega3;
  if (model.beams.scan)
    beams["scan"] = {{"start", model.beams.scan->start}, {"stop", model.beams.scan->stop}, {"step", model.beams.scan->step}};
  root["beams"] = beams;

  if (model.states) {
    const MolecularModel& m = *model.states;
    ojson s;
    ojson levels = ojson::array();
    for (const Level& l : m.levels()) levels.push_back({{"id", l.id}, {"energy", l.energy}});
    s["levels"] = levels;
    auto table = [](const auto& t) {
      ojson a = ojson::array();
      for (const auto& [key, value] : t)
        a.push_back({{"bra", key.first}, {"ket", key.second}, {"value", array_of(value)}});
      return a;
    };
    s["dipoles"] = table(m.dipole_table());
    s["magnetic"] = table(m.magnetic_table());
    s["quadrupoles"] = table(m.quadrupole_table());
    s["roles"] = {{"g", m.roles.ground},
                  {"s", m.roles.excited},
                  {"f", m.roles.final_state},
                  {"t", m.roles.pump_intermediates},
                  {"r", m.roles.probe_intermediates}};
    root["states"] = s;
    return root;
  }

  ojson modes = ojson::array();
  for (const Mode& mode : model.modes) {
    const PropertyTensorSet& t = mode.tensors;
    ojson j;
    j["name"] = mode.name;
    j["shift_cm1"] = mode.shift_cm1;
    j["alpha34"] = array_of(t.alpha34.data());
    j["alpha12"] = array_of(t.alpha12.data());
    j["gprime34"] = array_of(t.gprime34.data());
    j["a34"] = array_of(t.a34.data());
    if (t.gprime12) j["gprime12"] = array_of(t.gprime12->data());
    if (t.a12) j["a12"] = array_of(t.a12->data());
    modes.push_back(j);
  }
  root["modes"] = modes;
  return root;
}

std::string serialize_model(const ModelFile& model) { return to_json(model).dump(2) + "\n"; }

}  // namespace cars
