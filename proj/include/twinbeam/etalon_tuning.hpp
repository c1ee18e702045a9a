// Copyright 2026 The twinbeam Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Temperature tuning of an etalon filter chain: maximise transmission at one
// optical frequency while holding a minimum extinction at others.

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "twinbeam/optics.hpp"

namespace twinbeam {

struct TuningOptions {
  std::size_t grid_points = 400;      // per etalon, across one FSR-equivalent span
  std::size_t max_sweeps = 6;         // coordinate-ascent passes
  double stability_window = 0.005;    // deg C, temperature-controller stability
};

struct EtalonSensitivity {
  std::size_t element_index;
  double temperature;            // deg C
  double slope;                  // d(chain transmission)/dT at the optimum, 1/deg C
  double max_slope_in_window;    // max |d(transmission)/dT| over +/- stability_window
};

struct RejectExtinction {
  double frequency;
  double extinction_db;    // 10 log10(T(pass) / T(reject))
};

struct TuningReport {
  bool feasible = false;
  double pass_frequency = 0.0;
  double transmission = 0.0;
  double min_extinction_db = 0.0;        // requested
  double worst_extinction_db = 0.0;      // achieved
  double binding_reject_frequency = 0.0; // reject frequency with the worst extinction
  std::vector<RejectExtinction> extinctions;
  std::vector<EtalonSensitivity> sensitivities;
  double stability_window = 0.0;

  /// Upper bound on |change in transmission| when every etalon drifts by at
  /// most `delta_t` (<= stability_window) from its tuned temperature.
  double transmission_change_bound(double delta_t) const {
    double bound = 0.0;
    for (const auto& s : sensitivities) bound += s.max_slope_in_window * std::abs(delta_t);
    return bound;
  }
};

struct TuningResult {
  FilterChain chain;
  TuningReport report;
};

namespace detail {

struct ChainEvaluation {
  double transmission;
  std::vector<RejectExtinction> extinctions;
  double worst_db;
  double worst_frequency;
};

inline ChainEvaluation evaluate_chain(const FilterChain& chain, double pass,
                                      const std::vector<double>& rejects) {
  ChainEvaluation ev{chain_transmission(chain, pass), {},
                     std::numeric_limits<double>::infinity(), 0.0};
  for (double f : rejects) {
    const double db = 10.0 * std::log10(ev.transmission / chain_transmission(chain, f));
    ev.extinctions.push_back({f, db});
    if (db < ev.worst_db) {
      ev.worst_db = db;
      ev.worst_frequency = f;
    }
  }
  return ev;
}

// Transmission with an extinction-deficit penalty (1 per dB short).
inline double tuning_score(const ChainEvaluation& ev, double min_extinction_db) {
  const double deficit = std::max(0.0, min_extinction_db - ev.worst_db);
  return ev.transmission - deficit;
}

inline void set_temperature(FilterChain& chain, std::size_t index, double t) {
  std::get<EtalonSpec>(chain.elements[index]).temperature = t;
}

inline double chain_derivative(FilterChain chain, std::size_t index, double pass, double t) {
  constexpr double h = 1e-5;
  set_temperature(chain, index, t + h);
  const double up = chain_transmission(chain, pass);
  set_temperature(chain, index, t - h);
  const double down = chain_transmission(chain, pass);
  return (up - down) / (2.0 * h);
}

}  // namespace detail

/// Grid + Brent coordinate ascent over etalon temperatures. Each etalon is
/// scanned across one FSR-equivalent temperature span centred on its
/// reference temperature, then refined locally. Deterministic for a given
/// chain and options. An infeasible design is returned with
/// report.feasible == false and the binding reject frequency named.
inline TuningResult tune_temperatures(const FilterChain& input, double pass_frequency,
                                      const std::vector<double>& reject_frequencies,
                                      double min_extinction_db, const TuningOptions& options = {}) {
  const auto etalons = input.etalon_indices();
  if (etalons.empty()) {
    throw InvalidArgument("tune_temperatures: chain has no etalon");
  }
  if (!(pass_frequency > 0.0)) {
    throw InvalidArgument("tune_temperatures: pass frequency must be > 0");
  }
  for (double f : reject_frequencies) {
    if (!(f > 0.0) || f == pass_frequency) {
      throw InvalidArgument("tune_temperatures: reject frequencies must be positive and differ "
                            "from the pass frequency");
    }
  }
  if (options.grid_points < 3) {
    throw InvalidArgument("tune_temperatures: grid_points must be >= 3");
  }
  for (std::size_t i : etalons) std::get<EtalonSpec>(input.elements[i]).validate();

  FilterChain chain = input;
  auto score_at = [&](std::size_t index, double t) {
    detail::set_temperature(chain, index, t);
    return detail::tuning_score(detail::evaluate_chain(chain, pass_frequency, reject_frequencies),
                                min_extinction_db);
  };

  double best = detail::tuning_score(
      detail::evaluate_chain(chain, pass_frequency, reject_frequencies), min_extinction_db);
  for (std::size_t sweep = 0; sweep < options.max_sweeps; ++sweep) {
    const double sweep_start = best;
    for (std::size_t index : etalons) {
      const auto& spec = std::get<EtalonSpec>(chain.elements[index]);
      const double current = spec.temperature;
      const double span = 1.0 / std::abs(order_drift_per_degree(spec, pass_frequency));
      const double lo = spec.reference_temperature - 0.5 * span;
      const double step = span / static_cast<double>(options.grid_points);

      double best_t = current;
      double best_score = score_at(index, current);
      for (std::size_t k = 0; k <= options.grid_points; ++k) {
        const double t = lo + step * static_cast<double>(k);
        const double s = score_at(index, t);
        if (s > best_score) {
          best_score = s;
          best_t = t;
        }
      }
      const auto [t_opt, neg_score] = boost::math::tools::brent_find_minima(
          [&](double t) { return -score_at(index, t); }, best_t - step, best_t + step,
          std::numeric_limits<double>::digits);
      if (-neg_score > best_score) {
        best_score = -neg_score;
        best_t = t_opt;
      }
      detail::set_temperature(chain, index, best_t);
      best = best_score;
    }
    if (best - sweep_start <= 1e-15) break;
  }

  const auto ev = detail::evaluate_chain(chain, pass_frequency, reject_frequencies);
  TuningReport report;
  report.pass_frequency = pass_frequency;
  report.transmission = ev.transmission;
  report.min_extinction_db = min_extinction_db;
  report.extinctions = ev.extinctions;
  report.worst_extinction_db = reject_frequencies.empty() ? 0.0 : ev.worst_db;
  report.binding_reject_frequency = ev.worst_frequency;
  report.feasible = reject_frequencies.empty() || ev.worst_db >= min_extinction_db;
  report.stability_window = options.stability_window;

  constexpr int window_samples = 40;
  for (std::size_t index : etalons) {
    const double t = std::get<EtalonSpec>(chain.elements[index]).temperature;
    EtalonSensitivity s{index, t, detail::chain_derivative(chain, index, pass_frequency, t), 0.0};
    for (int k = 0; k <= window_samples; ++k) {
      const double dt =
          options.stability_window * (2.0 * k / static_cast<double>(window_samples) - 1.0);
      s.max_slope_in_window = std::max(
          s.max_slope_in_window,
          std::abs(detail::chain_derivative(chain, index, pass_frequency, t + dt)));
    }
    report.sensitivities.push_back(s);
  }
  return {std::move(chain), std::move(report)};
}

}  // namespace twinbeam
