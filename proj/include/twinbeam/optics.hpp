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

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "twinbeam/constants.hpp"
#include "twinbeam/error.hpp"

namespace twinbeam {

//---------------------------------------------------------------------------//
// Electro-optic phase modulator
//---------------------------------------------------------------------------//

struct EomSpec {
  double drive_frequency = 9.2e9;   // Hz
  double modulation_depth = 0.0;    // rad (beta)
  int max_order = 8;
  double insertion_transmission = 1.0;

  void validate() const {
    if (!(drive_frequency > 0.0)) throw InvalidArgument("EomSpec: drive_frequency must be > 0");
    if (!(modulation_depth >= 0.0)) throw InvalidArgument("EomSpec: modulation depth must be >= 0");
    if (max_order < 2) throw InvalidArgument("EomSpec: max_order must be >= 2");
    if (!(insertion_transmission >= 0.0 && insertion_transmission <= 1.0)) {
      throw InvalidArgument("EomSpec: insertion_transmission must lie in [0, 1]");
    }
  }
};

struct SidebandPower {
  int order;
  double fraction;
};

/// Fractional optical power J_k(beta)^2 for orders -max_order..max_order.
inline std::vector<SidebandPower> eom_sideband_powers(const EomSpec& spec) {
  spec.validate();
  std::vector<SidebandPower> out;
  for (int k = -spec.max_order; k <= spec.max_order; ++k) {
    // J_{-k} = (-1)^k J_k, so the power is symmetric.
    const double j = std::cyl_bessel_j(static_cast<double>(std::abs(k)), spec.modulation_depth);
    out.push_back({k, j * j});
  }
  return out;
}

inline double sideband_fraction(const EomSpec& spec, int order) {
  const double j = std::cyl_bessel_j(static_cast<double>(std::abs(order)), spec.modulation_depth);
  return j * j;
}

/// First-order sideband to carrier power ratio J_1^2 / J_0^2.
inline double sideband_to_carrier_ratio(double beta) {
  const double j0 = std::cyl_bessel_j(0.0, beta);
  const double j1 = std::cyl_bessel_j(1.0, beta);
  return (j1 * j1) / (j0 * j0);
}

/// Modulation depth giving the requested first-sideband/carrier power ratio.
/// The ratio is monotone on (0, 2.40), below the first zero of J_0.
inline double solve_beta(double ratio) {
  constexpr double upper = 2.40;
  if (!(ratio > 0.0) || !(ratio < sideband_to_carrier_ratio(upper))) {
    throw NoSolution("solve_beta: ratio " + std::to_string(ratio) +
                     " outside the invertible range (0, J1^2/J0^2 at beta=2.40)");
  }
  auto f = [ratio](double beta) { return sideband_to_carrier_ratio(beta) - ratio; };
  std::uintmax_t max_iter = 200;
  auto tol = [](double lo, double hi) { return std::abs(hi - lo) < 1e-12; };
  const auto [lo, hi] = boost::math::tools::toms748_solve(f, 0.0, upper, -ratio,
                                                          f(upper), tol, max_iter);
  return 0.5 * (lo + hi);
}

//---------------------------------------------------------------------------//
// Fabry-Perot etalons and filter chains
//---------------------------------------------------------------------------//

struct EtalonSpec {
  double thickness = 7e-3;             // m, at reference_temperature
  double refractive_index = 1.4975;    // at reference_temperature
  double reflectivity = 0.70;          // per face, in [0, 1)
  double peak_transmission = 1.0;      // absorption / surface loss, in (0, 1]
  double temperature = 25.0;           // deg C
  double dn_dT = 1.0e-5;               // 1/deg C
  double expansion_coeff = 5.5e-7;     // 1/deg C
  double reference_temperature = 25.0; // deg C

  double index() const { return refractive_index + dn_dT * (temperature - reference_temperature); }
  double length() const {
    return thickness * (1.0 + expansion_coeff * (temperature - reference_temperature));
  }
  /// Free spectral range c / (2 n L) at the current temperature.
  double fsr() const { return constants::speed_of_light / (2.0 * index() * length()); }
  /// Coefficient of finesse F = 4R / (1 - R)^2.
  double coefficient_of_finesse() const {
    return 4.0 * reflectivity / ((1.0 - reflectivity) * (1.0 - reflectivity));
  }

  void validate() const {
    if (!(thickness > 0.0)) throw InvalidArgument("EtalonSpec: thickness must be > 0");
    if (!(refractive_index >= 1.0)) throw InvalidArgument("EtalonSpec: refractive index must be >= 1");
    if (!(reflectivity >= 0.0 && reflectivity < 1.0)) {
      throw InvalidArgument("EtalonSpec: reflectivity must lie in [0, 1)");
    }
    if (!(peak_transmission > 0.0 && peak_transmission <= 1.0)) {
      throw InvalidArgument("EtalonSpec: peak_transmission must lie in (0, 1]");
    }
    if (!(fsr() > 0.0)) throw InvalidArgument("EtalonSpec: FSR must be > 0");
  }
};

/// Airy transmission T_peak / (1 + F sin^2(pi nu / FSR)). Resonances sit at
/// integer multiples of the FSR, so heating the etalon (which changes n and L)
/// walks the comb across a fixed optical frequency.
inline double etalon_transmission(const EtalonSpec& spec, double frequency) {
  if (!(frequency > 0.0)) {
    throw InvalidArgument("etalon_transmission: frequency must be > 0");
  }
  const double orders = frequency / spec.fsr();
  const double phase = constants::pi * (orders - std::round(orders));
  const double s = std::sin(phase);
  return spec.peak_transmission / (1.0 + spec.coefficient_of_finesse() * s * s);
}

/// Rate at which the resonance order at `frequency` changes with temperature
/// (orders per deg C).
inline double order_drift_per_degree(const EtalonSpec& spec, double frequency) {
  const double d_optical_length =
      spec.dn_dT * spec.length() +
      spec.index() * spec.thickness * spec.expansion_coeff;
  return frequency * 2.0 * d_optical_length / constants::speed_of_light;
}

struct StaticLoss {
  double transmittance = 1.0;
  std::string role = "passive";   // free-form label, e.g. "window", "polarizer"
};

using FilterElement = std::variant<EomSpec, EtalonSpec, StaticLoss>;

struct FilterChain {
  std::vector<FilterElement> elements;

  std::vector<std::size_t> etalon_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < elements.size(); ++k) {
      if (std::holds_alternative<EtalonSpec>(elements[k])) out.push_back(k);
    }
    return out;
  }
};

inline double element_transmission(const FilterElement& element, double frequency) {
  struct Visitor {
    double frequency;
    double operator()(const EomSpec& e) const { return e.insertion_transmission; }
    double operator()(const EtalonSpec& e) const { return etalon_transmission(e, frequency); }
    double operator()(const StaticLoss& e) const { return e.transmittance; }
  };
  return std::visit(Visitor{frequency}, element);
}

/// Product of element transmissions at an absolute optical frequency.
inline double chain_transmission(const FilterChain& chain, double frequency) {
  if (chain.elements.empty()) {
    throw InvalidArgument("chain_transmission: empty chain");
  }
  double t = 1.0;
  for (const auto& e : chain.elements) {
    t *= element_transmission(e, frequency);
  }
  return t;
}

}  // namespace twinbeam
