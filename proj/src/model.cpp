#include "dsim/model.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace dsim {

EsrSpec BidParameters::applied_to(const EsrSpec& truth) const {
  EsrSpec s = truth;
  if (cost_d) s.cost_discharge = *cost_d;
  if (cost_c) s.cost_charge = *cost_c;
  if (cap_d) s.cap_discharge = *cap_d;
  if (cap_c) s.cap_charge = *cap_c;
  if (ramp_up_d) s.ramp_up_d = *ramp_up_d;
  if (ramp_down_d) s.ramp_down_d = *ramp_down_d;
  if (ramp_up_c) s.ramp_up_c = *ramp_up_c;
  if (ramp_down_c) s.ramp_down_c = *ramp_down_c;
  if (soc_min) s.soc_min = *soc_min;
  if (soc_max) s.soc_max = *soc_max;
  return s;
}

const Resource* Fleet::find(const std::string& id) const {
  for (const auto& r : resources)
    if (r.truth.id == id) return &r;
  return nullptr;
}

EsrSpec generator_as_esr(const std::string& id, double cap, double ramp, double cost) {
  if (cap < 0 || ramp < 0)
    throw std::invalid_argument("generator_as_esr: negative capacity or ramp");
  EsrSpec s;
  s.id = id;
  s.cost_discharge = cost;
  s.cap_discharge = cap;
  s.cap_charge = 0.0;  // a generator only injects
  s.ramp_up_d = ramp;
  s.ramp_down_d = ramp;
  s.ramp_up_c = 0.0;
  s.ramp_down_c = 0.0;
  s.soc_min = -kInf;
  s.soc_max = kInf;
  s.soc_init = 0.0;
  return s;
}

EsrSpec dera_as_esr(const std::string& id, double cap_c, double cap_d, double ramp_c,
                    double ramp_d, double cost_c, double cost_d) {
  if (cap_c < 0 || cap_d < 0) throw std::invalid_argument("dera_as_esr: negative capacity");
  if (ramp_c < 0 || ramp_d < 0) throw std::invalid_argument("dera_as_esr: negative ramp");
  EsrSpec s;
  s.id = id;
  s.cost_discharge = cost_d;
  s.cost_charge = cost_c;
  s.cap_discharge = cap_d;
  s.cap_charge = cap_c;
  s.ramp_up_d = ramp_d;
  s.ramp_down_d = ramp_d;
  s.ramp_up_c = ramp_c;
  s.ramp_down_c = ramp_c;
  s.soc_min = -kInf;  // virtual storage: state of charge never binds
  s.soc_max = kInf;
  s.soc_init = 0.0;
  return s;
}

namespace {

void check_spec(const EsrSpec& s, const std::string& who, std::vector<Diagnostic>& out) {
  auto err = [&](const std::string& msg) { out.push_back({who, msg, false}); };
  auto warn = [&](const std::string& msg) { out.push_back({who, msg, true}); };

  if (!(s.cap_discharge >= 0)) err("cap_discharge negative");
  if (!(s.cap_charge >= 0)) err("cap_charge negative");
  for (double r : {s.ramp_up_d, s.ramp_down_d, s.ramp_up_c, s.ramp_down_c})
    if (!(r >= 0)) err("ramp limit negative");
  if (!(s.eff_charge > 0 && s.eff_charge <= 1)) err("eff_charge outside (0,1]");
  if (!(s.eff_discharge > 0 && s.eff_discharge <= 1)) err("eff_discharge outside (0,1]");
  if (std::isnan(s.soc_min) || std::isnan(s.soc_max)) err("soc bounds NaN");
  if (s.soc_min > s.soc_max) err("soc_min above soc_max");
  if (s.has_soc()) {
    if (s.soc_init < s.soc_min) err("soc_init below soc_min");
    if (s.soc_init > s.soc_max) err("soc_init above soc_max");
  }
  if (!std::isfinite(s.cost_discharge) || !std::isfinite(s.cost_charge))
    err("bid cost not finite");
  // cost-order condition for exact charge/discharge complementarity
  if (s.cap_charge > 0 &&
      !(s.cost_discharge > s.cost_charge / (s.eff_charge * s.eff_discharge)))
    warn("complementarity relaxation may fail: cost_d <= cost_c/(eff_c*eff_d)");
}

}  // namespace

std::vector<Diagnostic> validate_fleet(const Fleet& fleet) {
  std::vector<Diagnostic> out;
  if (fleet.horizon < 1) out.push_back({"", "horizon must be >= 1", false});
  if (fleet.window < 1 || fleet.window > fleet.horizon)
    out.push_back({"", "window must satisfy 1 <= W <= T", false});
  std::set<std::string> ids;
  for (const auto& r : fleet.resources) {
    if (!ids.insert(r.truth.id).second)
      out.push_back({r.truth.id, "duplicate resource id", false});
    check_spec(r.truth, r.truth.id, out);
    if (!r.bid.empty()) check_spec(r.bid_spec(), r.truth.id + " (bid)", out);
  }
  return out;
}

// ---- JSON loading ----------------------------------------------------------

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) {
  throw std::runtime_error("fleet config: " + msg);
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key())) fail("unknown key \"" + it.key() + "\" in " + where);
}

double num(const json& obj, const std::string& key) {
  const auto& v = obj.at(key);
  if (!v.is_number()) fail("key \"" + key + "\" must be a number");
  return v.get<double>();
}

double num_or(const json& obj, const std::string& key, double fallback) {
  if (!obj.contains(key)) return fallback;
  return num(obj, key);
}

BidParameters parse_bid(const json& b, const std::string& id) {
  static const std::set<std::string> keys = {"cost_d",      "cost_c",      "cap_d",
                                             "cap_c",       "ramp_up_d",   "ramp_down_d",
                                             "ramp_up_c",   "ramp_down_c", "soc_min",
                                             "soc_max"};
  reject_unknown(b, keys, "bid of resource " + id);
  BidParameters out;
  auto opt = [&](const char* k) -> std::optional<double> {
    if (!b.contains(k)) return std::nullopt;
    return num(b, k);
  };
  out.cost_d = opt("cost_d");
  out.cost_c = opt("cost_c");
  out.cap_d = opt("cap_d");
  out.cap_c = opt("cap_c");
  out.ramp_up_d = opt("ramp_up_d");
  out.ramp_down_d = opt("ramp_down_d");
  out.ramp_up_c = opt("ramp_up_c");
  out.ramp_down_c = opt("ramp_down_c");
  out.soc_min = opt("soc_min");
  out.soc_max = opt("soc_max");
  return out;
}

Resource parse_resource(const json& r) {
  static const std::set<std::string> keys = {
      "id",        "kind",        "cost_d",    "cost_c",      "cap_d",
      "cap_c",     "ramp_up_d",   "ramp_down_d", "ramp_up_c", "ramp_down_c",
      "soc_min",   "soc_max",     "soc_init",  "eff_c",       "eff_d",
      "bid"};
  if (!r.contains("id") || !r.at("id").is_string()) fail("resource missing string id");
  const std::string id = r.at("id").get<std::string>();
  reject_unknown(r, keys, "resource " + id);
  if (!r.contains("kind")) fail("resource " + id + " missing kind");
  const std::string kind = r.at("kind").get<std::string>();

  Resource res;
  if (kind == "generator") {
    for (const char* k : {"cost_c", "cap_c", "ramp_up_c", "ramp_down_c", "soc_min",
                          "soc_max", "soc_init", "eff_c", "eff_d"})
      if (r.contains(k)) fail("key \"" + std::string(k) + "\" not valid for generator " + id);
    res.truth = generator_as_esr(id, num(r, "cap_d"), num_or(r, "ramp_up_d", kInf),
                                 num(r, "cost_d"));
    res.truth.ramp_down_d = num_or(r, "ramp_down_d", res.truth.ramp_up_d);
  } else if (kind == "dera") {
    for (const char* k : {"soc_min", "soc_max", "soc_init"})
      if (r.contains(k)) fail("key \"" + std::string(k) + "\" not valid for dera " + id);
    res.truth = dera_as_esr(id, num(r, "cap_c"), num(r, "cap_d"),
                            num_or(r, "ramp_up_c", kInf), num_or(r, "ramp_up_d", kInf),
                            num(r, "cost_c"), num(r, "cost_d"));
    res.truth.ramp_down_d = num_or(r, "ramp_down_d", res.truth.ramp_down_d);
    res.truth.ramp_down_c = num_or(r, "ramp_down_c", res.truth.ramp_down_c);
    res.truth.eff_charge = num_or(r, "eff_c", 1.0);
    res.truth.eff_discharge = num_or(r, "eff_d", 1.0);
  } else if (kind == "esr") {
    EsrSpec s;
    s.id = id;
    s.cost_discharge = num(r, "cost_d");
    s.cost_charge = num(r, "cost_c");
    s.cap_discharge = num(r, "cap_d");
    s.cap_charge = num(r, "cap_c");
    s.ramp_up_d = num_or(r, "ramp_up_d", kInf);
    s.ramp_down_d = num_or(r, "ramp_down_d", kInf);
    s.ramp_up_c = num_or(r, "ramp_up_c", kInf);
    s.ramp_down_c = num_or(r, "ramp_down_c", kInf);
    s.soc_min = num(r, "soc_min");
    s.soc_max = num(r, "soc_max");
    s.soc_init = num(r, "soc_init");
    s.eff_charge = num_or(r, "eff_c", 1.0);
    s.eff_discharge = num_or(r, "eff_d", 1.0);
    res.truth = s;
  } else {
    fail("resource " + id + ": kind must be generator|dera|esr");
  }
  if (r.contains("bid")) res.bid = parse_bid(r.at("bid"), id);
  return res;
}

}  // namespace

Fleet load_fleet_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const std::exception& e) {
    fail(std::string("parse error: ") + e.what());
  }
  if (!doc.is_object()) fail("top level must be an object");
  reject_unknown(doc, {"horizon", "window", "resources"}, "top level");
  Fleet fleet;
  fleet.horizon = static_cast<int>(num(doc, "horizon"));
  fleet.window = static_cast<int>(num(doc, "window"));
  if (!doc.contains("resources") || !doc.at("resources").is_array())
    fail("\"resources\" must be an array");
  for (const auto& r : doc.at("resources")) fleet.resources.push_back(parse_resource(r));

  std::vector<Diagnostic> diags = validate_fleet(fleet);
  for (const auto& d : diags)
    if (!d.warning) fail(d.resource_id.empty() ? d.message : d.resource_id + ": " + d.message);
  return fleet;
}

Fleet load_fleet_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_fleet_json(ss.str());
}

}  // namespace dsim
