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

// Sampling oracle for photon-number moments. Quadratures are drawn from the
// state's Wigner distribution N(mean, cov); each sample is converted to a
// semiclassical intensity I = (x^2 + p^2)/4 - 1/2 (the Weyl symbol of a^dagger a).
// The Wigner variance of that symbol exceeds the quantum variance by exactly
// 1/4 per mode, which is subtracted; cross-mode covariances need no correction.

#include <Eigen/Cholesky>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "twinbeam/gaussian.hpp"
#include "twinbeam/random.hpp"

namespace twinbeam {

struct MonteCarloStats {
  PhotonStats estimate;
  PhotonStats standard_error;
  double diff_ratio = 0.0;
  double diff_ratio_error = 0.0;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
  // Modes below this mean photon number are outside the bright-beam regime
  // where the semiclassical-intensity picture is meaningful.
  static constexpr double bright_threshold = 100.0;
  bool bright_a = false;
  bool bright_b = false;
  bool reliable() const { return bright_a && bright_b; }
};

namespace detail {

struct MomentSums {
  double n = 0, sa = 0, sb = 0, saa = 0, sbb = 0, sab = 0;

  void add(double ia, double ib) {
    n += 1;
    sa += ia;
    sb += ib;
    saa += ia * ia;
    sbb += ib * ib;
    sab += ia * ib;
  }
};

// Moments from shifted sums; `shift_a/b` keep the sums well conditioned for
// bright beams.
inline PhotonStats finish_moments(const MomentSums& m, double shift_a, double shift_b) {
  PhotonStats out;
  const double ma = m.sa / m.n;
  const double mb = m.sb / m.n;
  const double scale = m.n / (m.n - 1.0);
  out.mean_a = ma + shift_a;
  out.mean_b = mb + shift_b;
  out.var_a = (m.saa / m.n - ma * ma) * scale - 0.25;
  out.var_b = (m.sbb / m.n - mb * mb) * scale - 0.25;
  out.cov_ab = (m.sab / m.n - ma * mb) * scale;
  return out;
}

}  // namespace detail

/// Sample-based estimate of photon_stats(state, mode_a, mode_b). Standard
/// errors come from 100 equal batches. Identical seeds give bit-identical
/// results.
inline MonteCarloStats monte_carlo_photon_stats(const GaussianState& state, std::size_t mode_a,
                                                std::size_t mode_b, std::uint64_t n_samples,
                                                std::uint64_t seed) {
  detail::check_pair(state, mode_a, mode_b, "monte_carlo_photon_stats");
  constexpr std::uint64_t n_batches = 100;
  if (n_samples < 10000) {
    throw InvalidArgument("monte_carlo_photon_stats: n_samples must be >= 1e4");
  }
  const auto a = detail::ix(mode_a);
  const auto b = detail::ix(mode_b);

  // Marginal over the four quadratures of interest.
  const std::array<Eigen::Index, 4> idx{a, a + 1, b, b + 1};
  Eigen::Vector4d mu;
  Eigen::Matrix4d cov;
  for (int i = 0; i < 4; ++i) {
    mu(i) = state.mean()(idx[i]);
    for (int j = 0; j < 4; ++j) {
      cov(i, j) = state.cov()(idx[i], idx[j]);
    }
  }
  const Eigen::Matrix4d chol = Eigen::LLT<Eigen::Matrix4d>(cov).matrixL();

  std::vector<RandomStream> streams;
  for (std::uint64_t k = 0; k < 4; ++k) {
    streams.emplace_back(seed, k);
  }

  const double shift_a = (cov(0, 0) + cov(1, 1) + mu.head<2>().squaredNorm() - 2.0) / 4.0;
  const double shift_b = (cov(2, 2) + cov(3, 3) + mu.tail<2>().squaredNorm() - 2.0) / 4.0;

  detail::MomentSums total;
  std::vector<detail::MomentSums> batches(n_batches);
  const std::uint64_t per_batch = n_samples / n_batches;
  Eigen::Vector4d z;
  for (std::uint64_t s = 0; s < n_samples; ++s) {
    for (int k = 0; k < 4; ++k) {
      z(k) = streams[static_cast<std::size_t>(k)].normal();
    }
    const Eigen::Vector4d q = mu + chol * z;
    const double ia = (q(0) * q(0) + q(1) * q(1)) / 4.0 - 0.5 - shift_a;
    const double ib = (q(2) * q(2) + q(3) * q(3)) / 4.0 - 0.5 - shift_b;
    total.add(ia, ib);
    const std::uint64_t bi = std::min(s / per_batch, n_batches - 1);
    batches[bi].add(ia, ib);
  }

  MonteCarloStats out;
  out.n_samples = n_samples;
  out.seed = seed;
  out.estimate = detail::finish_moments(total, shift_a, shift_b);
  out.bright_a = out.estimate.mean_a >= MonteCarloStats::bright_threshold;
  out.bright_b = out.estimate.mean_b >= MonteCarloStats::bright_threshold;
  const double total_mean = out.estimate.mean_a + out.estimate.mean_b;
  out.diff_ratio = total_mean > 0.0 ? intensity_diff_ratio(out.estimate) : 0.0;

  // Batch-means standard errors.
  PhotonStats sum, sum_sq;
  double r_sum = 0.0, r_sq = 0.0;
  for (const auto& batch : batches) {
    const PhotonStats p = detail::finish_moments(batch, shift_a, shift_b);
    auto acc = [](double& s1, double& s2, double v) {
      s1 += v;
      s2 += v * v;
    };
    acc(sum.mean_a, sum_sq.mean_a, p.mean_a);
    acc(sum.mean_b, sum_sq.mean_b, p.mean_b);
    acc(sum.var_a, sum_sq.var_a, p.var_a);
    acc(sum.var_b, sum_sq.var_b, p.var_b);
    acc(sum.cov_ab, sum_sq.cov_ab, p.cov_ab);
    const double t = p.mean_a + p.mean_b;
    const double r = t > 0.0 ? intensity_diff_ratio(p) : 0.0;
    acc(r_sum, r_sq, r);
  }
  const double nb = static_cast<double>(n_batches);
  auto se = [nb](double s1, double s2) {
    const double m = s1 / nb;
    return std::sqrt(std::max(0.0, (s2 / nb - m * m) * nb / (nb - 1.0)) / nb);
  };
  out.standard_error.mean_a = se(sum.mean_a, sum_sq.mean_a);
  out.standard_error.mean_b = se(sum.mean_b, sum_sq.mean_b);
  out.standard_error.var_a = se(sum.var_a, sum_sq.var_a);
  out.standard_error.var_b = se(sum.var_b, sum_sq.var_b);
  out.standard_error.cov_ab = se(sum.cov_ab, sum_sq.cov_ab);
  out.diff_ratio_error = se(r_sum, r_sq);
  return out;
}

}  // namespace twinbeam
