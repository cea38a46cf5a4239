#pragma once
// Demand-trace generation and per-window probabilistic forecasts.
//
// All randomness comes from a counter-mode SplitMix64 generator with
// Box-Muller normals, so a (seed, trial, window, scenario) tuple always
// yields the same stream on every platform. No platform-default RNG is used
// anywhere.

#include <cstdint>
#include <memory>
#include <vector>

namespace dsim {

// counter-based generator: value i of a stream is a pure function of
// (key, i)
class CounterRng {
 public:
  // stream ids mix the seed with caller-chosen identifiers
  CounterRng(std::uint64_t seed, std::uint64_t id0, std::uint64_t id1 = 0,
             std::uint64_t id2 = 0);
  double uniform01();  // in (0,1]
  double gaussian();   // standard normal (Box-Muller, two uniforms each)

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

struct DemandModel {
  std::vector<double> base_profile;  // MWh per interval
  double trace_noise_std = 0.05;     // fraction of the profile mean
  double forecast_sigma = 0.01;      // per-step error fraction
  int scenario_count = 1;            // K
  std::uint64_t seed = 0;
};

struct TraceSet {
  std::vector<std::vector<double>> traces;
  std::int64_t clipped = 0;  // negative draws clipped to zero
};

TraceSet generate_demand_traces(const DemandModel& model, int n_trials);

struct ScenarioSet {
  // paths[k][0] is the binding interval and always equals the realized
  // demand; probabilities sum to 1
  std::vector<std::vector<double>> paths;
  std::vector<double> probabilities;
  std::int64_t clipped = 0;
};

// K scenario paths over the window starting at t0 (0-based), truncated at
// the end of the trace. Forecast of interval t0+tau carries error
// sigma*d[t0+tau]*sqrt(tau): a random-walk accumulation of per-step normals
// rescaled to the target interval's demand.
ScenarioSet forecast_scenarios(const std::vector<double>& trace, int t0, int W, int K,
                               double sigma, std::uint64_t seed, std::uint64_t trial);

// single-scenario conditional-mean path (the error model is zero-mean, so
// this is the true path over the window)
ScenarioSet deterministic_forecast(const std::vector<double>& trace, int t0, int W);

// forecast source used by the rolling dispatch
class ForecastProvider {
 public:
  virtual ~ForecastProvider() = default;
  virtual ScenarioSet scenarios(const std::vector<double>& trace, int t0, int W) = 0;
};

class DeterministicForecastProvider final : public ForecastProvider {
 public:
  ScenarioSet scenarios(const std::vector<double>& trace, int t0, int W) override {
    return deterministic_forecast(trace, t0, W);
  }
};

class GaussianForecastProvider final : public ForecastProvider {
 public:
  GaussianForecastProvider(int K, double sigma, std::uint64_t seed, std::uint64_t trial)
      : K_(K), sigma_(sigma), seed_(seed), trial_(trial) {}
  ScenarioSet scenarios(const std::vector<double>& trace, int t0, int W) override {
    return forecast_scenarios(trace, t0, W, K_, sigma_, seed_, trial_);
  }

 private:
  int K_;
  double sigma_;
  std::uint64_t seed_, trial_;
};

// fixed per-window scenario paths (test fixtures)
class CannedForecastProvider final : public ForecastProvider {
 public:
  explicit CannedForecastProvider(std::vector<ScenarioSet> per_window)
      : per_window_(std::move(per_window)) {}
  ScenarioSet scenarios(const std::vector<double>& trace, int t0, int W) override;

 private:
  std::vector<ScenarioSet> per_window_;
};

// 24-point base profile CSV with header "hour,demand_mwh"
std::vector<double> load_profile_csv(const std::string& path);

}  // namespace dsim
