#include "dsim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>

namespace dsim {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t id0, std::uint64_t id1,
                       std::uint64_t id2) {
  std::uint64_t k = splitmix64(seed ^ 0x7c1592ad3c1b9c17ULL);
  k = splitmix64(k ^ id0);
  k = splitmix64(k ^ id1);
  k = splitmix64(k ^ id2);
  key_ = k;
}

double CounterRng::uniform01() {
  const std::uint64_t bits = splitmix64(key_ ^ splitmix64(counter_++));
  // 53-bit mantissa, shifted into (0,1]
  return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
}

double CounterRng::gaussian() {
  const double u1 = uniform01();
  const double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

TraceSet generate_demand_traces(const DemandModel& model, int n_trials) {
  if (n_trials < 1) throw std::invalid_argument("n_trials must be >= 1");
  if (model.base_profile.empty()) throw std::invalid_argument("empty base profile");
  const double mean =
      std::accumulate(model.base_profile.begin(), model.base_profile.end(), 0.0) /
      static_cast<double>(model.base_profile.size());
  const double noise = model.trace_noise_std * mean;
  TraceSet out;
  out.traces.resize(n_trials);
  for (int j = 0; j < n_trials; ++j) {
    CounterRng rng(model.seed, /*stream*/ 0x01, static_cast<std::uint64_t>(j));
    auto& trace = out.traces[j];
    trace.resize(model.base_profile.size());
    for (std::size_t t = 0; t < trace.size(); ++t) {
      double v = model.base_profile[t];
      if (noise > 0) v += noise * rng.gaussian();
      if (v < 0) {
        v = 0;
        ++out.clipped;
      }
      trace[t] = v;
    }
  }
  return out;
}

ScenarioSet forecast_scenarios(const std::vector<double>& trace, int t0, int W, int K,
                               double sigma, std::uint64_t seed, std::uint64_t trial) {
  if (K < 1) throw std::invalid_argument("K must be >= 1");
  if (t0 < 0 || t0 >= static_cast<int>(trace.size()))
    throw std::invalid_argument("window start outside horizon");
  const int L = std::min(W, static_cast<int>(trace.size()) - t0);
  ScenarioSet out;
  out.paths.resize(K);
  out.probabilities.assign(K, 1.0 / K);
  for (int k = 0; k < K; ++k) {
    auto& path = out.paths[k];
    path.resize(L);
    path[0] = trace[t0];  // forecasts are perfect in the binding interval
    CounterRng rng(seed, /*stream*/ 0x02,
                   (static_cast<std::uint64_t>(trial) << 16) ^ static_cast<std::uint64_t>(t0),
                   static_cast<std::uint64_t>(k));
    double walk = 0.0;  // sum of per-step standard normals
    for (int tau = 1; tau < L; ++tau) {
      walk += sigma > 0 ? rng.gaussian() : 0.0;
      const double d = trace[t0 + tau];
      double v = d + sigma * d * walk;  // error std = sigma*d*sqrt(tau)
      if (v < 0) {
        v = 0;
        ++out.clipped;
      }
      path[tau] = v;
    }
  }
  return out;
}

ScenarioSet deterministic_forecast(const std::vector<double>& trace, int t0, int W) {
  if (t0 < 0 || t0 >= static_cast<int>(trace.size()))
    throw std::invalid_argument("window start outside horizon");
  const int L = std::min(W, static_cast<int>(trace.size()) - t0);
  ScenarioSet out;
  out.paths.assign(1, std::vector<double>(trace.begin() + t0, trace.begin() + t0 + L));
  out.probabilities.assign(1, 1.0);
  return out;
}

ScenarioSet CannedForecastProvider::scenarios(const std::vector<double>& trace, int t0,
                                              int W) {
  if (t0 < 0 || t0 >= static_cast<int>(per_window_.size()))
    throw std::runtime_error("no canned scenarios for window " + std::to_string(t0));
  ScenarioSet s = per_window_[t0];
  const int L = std::min(W, static_cast<int>(trace.size()) - t0);
  for (auto& path : s.paths) {
    if (static_cast<int>(path.size()) < L)
      throw std::runtime_error("canned scenario path too short");
    path.resize(L);
    path[0] = trace[t0];  // binding interval is always the realization
  }
  return s;
}

std::vector<double> load_profile_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open profile " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty profile " + path);
  if (line != "hour,demand_mwh" && line != "hour,demand_mwh\r")
    throw std::runtime_error("profile header must be \"hour,demand_mwh\"");
  std::vector<double> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string hour, val;
    if (!std::getline(ls, hour, ',') || !std::getline(ls, val))
      throw std::runtime_error("bad profile row: " + line);
    out.push_back(std::stod(val));
  }
  if (out.empty()) throw std::runtime_error("profile has no rows");
  return out;
}

}  // namespace dsim
