#pragma once
// Resource, bid and fleet types. A single generalized storage model covers
// conventional generators (no charging, unbounded state of charge) and
// DERA-style virtual storage (charging and discharging, unbounded state of
// charge) as parameter special cases.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "dsim/lp.hpp"  // for kInf

namespace dsim {

// Linear bid curve f(g) = coefficient * g, with optional per-interval
// coefficient overrides.
struct BidCurve {
  enum class Kind { linear };
  Kind kind = Kind::linear;
  double coefficient = 0.0;
  std::vector<double> per_interval;  // empty = flat

  double coeff_at(int t) const {
    if (!per_interval.empty() && t >= 0 && t < static_cast<int>(per_interval.size()))
      return per_interval[t];
    return coefficient;
  }
  double value(double g, int t) const { return coeff_at(t) * g; }
};

// One resource's physical/offered parameters. Unbounded limits are
// represented by +/- infinity; the LP builders omit those constraints.
struct EsrSpec {
  std::string id;
  double cost_discharge = 0.0;      // $/MWh paid for discharging
  double cost_charge = 0.0;         // $/MWh marginal benefit of charging
  double cap_discharge = 0.0;       // MW
  double cap_charge = 0.0;          // MW
  double ramp_up_d = kInf;          // MW per interval
  double ramp_down_d = kInf;
  double ramp_up_c = kInf;
  double ramp_down_c = kInf;
  double soc_min = -kInf;           // MWh
  double soc_max = kInf;
  double soc_init = 0.0;
  double eff_charge = 1.0;          // in (0,1]
  double eff_discharge = 1.0;
  double dispatch_init_d = 0.0;     // output/draw in the interval before t=1
  double dispatch_init_c = 0.0;

  bool has_soc() const { return std::isfinite(soc_min) || std::isfinite(soc_max); }
  BidCurve discharge_curve() const { return BidCurve{BidCurve::Kind::linear, cost_discharge, {}}; }
  BidCurve charge_curve() const { return BidCurve{BidCurve::Kind::linear, cost_charge, {}}; }
};

// Reported parameters: the subset of EsrSpec a participant bids. Unset
// fields fall back to the true value (truthful on that axis).
struct BidParameters {
  std::optional<double> cost_d, cost_c;
  std::optional<double> cap_d, cap_c;
  std::optional<double> ramp_up_d, ramp_down_d, ramp_up_c, ramp_down_c;
  std::optional<double> soc_min, soc_max;

  bool empty() const {
    return !cost_d && !cost_c && !cap_d && !cap_c && !ramp_up_d && !ramp_down_d &&
           !ramp_up_c && !ramp_down_c && !soc_min && !soc_max;
  }
  EsrSpec applied_to(const EsrSpec& truth) const;
};

struct Resource {
  EsrSpec truth;
  BidParameters bid;
  EsrSpec bid_spec() const { return bid.applied_to(truth); }
};

struct Fleet {
  std::vector<Resource> resources;
  int horizon = 0;  // T
  int window = 1;   // W

  const Resource* find(const std::string& id) const;
};

// special-case constructors
EsrSpec generator_as_esr(const std::string& id, double cap, double ramp, double cost);
EsrSpec dera_as_esr(const std::string& id, double cap_c, double cap_d, double ramp_c,
                    double ramp_d, double cost_c, double cost_d);

struct Diagnostic {
  std::string resource_id;  // empty for fleet-level findings
  std::string message;
  bool warning = false;  // warnings don't invalidate the fleet
};

// pure: same fleet always yields the same diagnostics (empty = valid)
std::vector<Diagnostic> validate_fleet(const Fleet& fleet);

// JSON configuration document, see README for the schema; unknown keys are
// rejected
Fleet load_fleet_json(const std::string& text);
Fleet load_fleet_file(const std::string& path);

}  // namespace dsim
