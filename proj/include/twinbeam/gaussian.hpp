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

// Gaussian-state quantum optics in the covariance-matrix picture.
//
// Conventions: quadratures are ordered (x1, p1, x2, p2, ...), with
// a = (x + i p) / 2, so the vacuum covariance is the identity and a coherent
// state |alpha> has mean (2 Re alpha, 2 Im alpha). All operations return new
// states; nothing mutates its input.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "twinbeam/error.hpp"

namespace twinbeam {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

class GaussianState {
 public:
  GaussianState(Vector mean, Matrix cov) : mean_(std::move(mean)), cov_(std::move(cov)) {
    const auto dim = mean_.size();
    if (dim == 0 || dim % 2 != 0) {
      throw InvalidArgument("GaussianState: mean length must be a positive even number");
    }
    if (cov_.rows() != dim || cov_.cols() != dim) {
      throw InvalidArgument("GaussianState: covariance must be 2n x 2n");
    }
  }

  std::size_t n_modes() const { return static_cast<std::size_t>(mean_.size() / 2); }
  const Vector& mean() const { return mean_; }
  const Matrix& cov() const { return cov_; }

 private:
  Vector mean_;
  Matrix cov_;
};

/// Standard symplectic form: block-diagonal [[0, 1], [-1, 0]] per mode.
inline Matrix symplectic_form(std::size_t n_modes) {
  const auto dim = static_cast<Eigen::Index>(2 * n_modes);
  Matrix omega = Matrix::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; k += 2) {
    omega(k, k + 1) = 1.0;
    omega(k + 1, k) = -1.0;
  }
  return omega;
}

/// Symplectic eigenvalues (one per mode, ascending). All >= 1 for a physical
/// state in these units.
inline std::vector<double> symplectic_spectrum(const GaussianState& state) {
  const Matrix sym = 0.5 * (state.cov() + state.cov().transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> root(sym);
  const Matrix sqrt_cov = root.operatorSqrt();
  const Matrix a = sqrt_cov * symplectic_form(state.n_modes()) * sqrt_cov;
  // a is antisymmetric; a^T a has eigenvalues nu_k^2, each twice.
  Eigen::SelfAdjointEigenSolver<Matrix> squares(a.transpose() * a, Eigen::EigenvaluesOnly);
  std::vector<double> nu;
  const auto& ev = squares.eigenvalues();
  for (Eigen::Index k = 0; k < ev.size(); k += 2) {
    nu.push_back(std::sqrt(std::max(0.0, 0.5 * (ev(k) + ev(k + 1)))));
  }
  return nu;
}

/// Largest |cov - cov^T| entry relative to the largest |cov| entry.
inline double covariance_asymmetry(const GaussianState& state) {
  const double scale = std::max(1.0, state.cov().cwiseAbs().maxCoeff());
  return (state.cov() - state.cov().transpose()).cwiseAbs().maxCoeff() / scale;
}

enum class SymplecticKind { squeezer, beamsplitter, rotation };

struct SymplecticOp {
  Matrix matrix;
  SymplecticKind kind;
};

namespace detail {

inline void check_mode(const GaussianState& state, std::size_t mode, const char* op) {
  if (mode >= state.n_modes()) {
    throw InvalidArgument(std::string(op) + ": mode " + std::to_string(mode) +
                          " out of range for " + std::to_string(state.n_modes()) + "-mode state");
  }
}

inline void check_pair(const GaussianState& state, std::size_t a, std::size_t b, const char* op) {
  check_mode(state, a, op);
  check_mode(state, b, op);
  if (a == b) {
    throw InvalidArgument(std::string(op) + ": modes must be distinct");
  }
}

inline Eigen::Index ix(std::size_t mode) { return static_cast<Eigen::Index>(2 * mode); }

}  // namespace detail

/// Two-mode squeezer a -> cosh r a + e^{i phase} sinh r b^dagger (and a <-> b).
inline SymplecticOp two_mode_squeezer(std::size_t n_modes, std::size_t mode_a, std::size_t mode_b,
                                      double r, double phase) {
  const auto dim = static_cast<Eigen::Index>(2 * n_modes);
  Matrix s = Matrix::Identity(dim, dim);
  const double ch = std::cosh(r);
  const double sh = std::sinh(r);
  const double c = std::cos(phase);
  const double sn = std::sin(phase);
  const auto a = detail::ix(mode_a);
  const auto b = detail::ix(mode_b);
  s(a, a) = ch;
  s(a + 1, a + 1) = ch;
  s(b, b) = ch;
  s(b + 1, b + 1) = ch;
  s(a, b) = sh * c;
  s(a, b + 1) = sh * sn;
  s(a + 1, b) = sh * sn;
  s(a + 1, b + 1) = -sh * c;
  s(b, a) = sh * c;
  s(b, a + 1) = sh * sn;
  s(b + 1, a) = sh * sn;
  s(b + 1, a + 1) = -sh * c;
  return {std::move(s), SymplecticKind::squeezer};
}

/// Beam splitter with intensity transmittance T: a -> sqrt(T) a + sqrt(1-T) b,
/// b -> -sqrt(1-T) a + sqrt(T) b.
inline SymplecticOp beamsplitter(std::size_t n_modes, std::size_t mode_a, std::size_t mode_b,
                                 double transmittance) {
  const auto dim = static_cast<Eigen::Index>(2 * n_modes);
  Matrix s = Matrix::Identity(dim, dim);
  const double t = std::sqrt(transmittance);
  const double rr = std::sqrt(1.0 - transmittance);
  const auto a = detail::ix(mode_a);
  const auto b = detail::ix(mode_b);
  for (Eigen::Index q = 0; q < 2; ++q) {
    s(a + q, a + q) = t;
    s(a + q, b + q) = rr;
    s(b + q, a + q) = -rr;
    s(b + q, b + q) = t;
  }
  return {std::move(s), SymplecticKind::beamsplitter};
}

/// Phase rotation a -> e^{i angle} a.
inline SymplecticOp rotation(std::size_t n_modes, std::size_t mode, double angle) {
  const auto dim = static_cast<Eigen::Index>(2 * n_modes);
  Matrix s = Matrix::Identity(dim, dim);
  const auto k = detail::ix(mode);
  s(k, k) = std::cos(angle);
  s(k, k + 1) = -std::sin(angle);
  s(k + 1, k) = std::sin(angle);
  s(k + 1, k + 1) = std::cos(angle);
  return {std::move(s), SymplecticKind::rotation};
}

inline GaussianState apply(const GaussianState& state, const SymplecticOp& op) {
  if (op.matrix.rows() != state.mean().size()) {
    throw InvalidArgument("apply: symplectic dimension does not match state");
  }
  return {op.matrix * state.mean(), op.matrix * state.cov() * op.matrix.transpose()};
}

inline GaussianState make_vacuum(std::size_t n_modes) {
  if (n_modes == 0) {
    throw InvalidArgument("make_vacuum: n_modes must be >= 1");
  }
  const auto dim = static_cast<Eigen::Index>(2 * n_modes);
  return {Vector::Zero(dim), Matrix::Identity(dim, dim)};
}

/// Coherent displacement by `amplitude` (in sqrt(photons)) on one mode.
inline GaussianState displace(const GaussianState& state, std::size_t mode,
                              std::complex<double> amplitude) {
  detail::check_mode(state, mode, "displace");
  Vector mean = state.mean();
  mean(detail::ix(mode)) += 2.0 * amplitude.real();
  mean(detail::ix(mode) + 1) += 2.0 * amplitude.imag();
  return {std::move(mean), state.cov()};
}

inline GaussianState two_mode_squeeze(const GaussianState& state, std::size_t mode_a,
                                      std::size_t mode_b, double r, double phase) {
  detail::check_pair(state, mode_a, mode_b, "two_mode_squeeze");
  if (!(r >= 0.0)) {
    throw InvalidArgument("two_mode_squeeze: r must be >= 0");
  }
  return apply(state, two_mode_squeezer(state.n_modes(), mode_a, mode_b, r, phase));
}

inline GaussianState beamsplit(const GaussianState& state, std::size_t mode_a, std::size_t mode_b,
                               double transmittance) {
  detail::check_pair(state, mode_a, mode_b, "beamsplit");
  if (!(transmittance >= 0.0 && transmittance <= 1.0)) {
    throw InvalidArgument("beamsplit: transmittance must lie in [0, 1]");
  }
  return apply(state, beamsplitter(state.n_modes(), mode_a, mode_b, transmittance));
}

inline GaussianState rotate(const GaussianState& state, std::size_t mode, double angle) {
  detail::check_mode(state, mode, "rotate");
  return apply(state, rotation(state.n_modes(), mode, angle));
}

/// Pure-loss channel of transmissivity eta on one mode (vacuum admixture).
inline GaussianState apply_loss(const GaussianState& state, std::size_t mode, double eta) {
  detail::check_mode(state, mode, "apply_loss");
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw InvalidArgument("apply_loss: eta must lie in [0, 1]");
  }
  const auto k = detail::ix(mode);
  const double amp = std::sqrt(eta);
  Vector mean = state.mean();
  Matrix cov = state.cov();
  mean.segment(k, 2) *= amp;
  cov.middleRows(k, 2) *= amp;
  cov.middleCols(k, 2) *= amp;
  cov.block(k, k, 2, 2) += (1.0 - eta) * Eigen::Matrix2d::Identity();
  return {std::move(mean), std::move(cov)};
}

struct PhotonStats {
  double mean_a = 0.0;
  double mean_b = 0.0;
  double var_a = 0.0;
  double var_b = 0.0;
  double cov_ab = 0.0;
};

/// Exact photon-number moments of two modes of a Gaussian state:
///   <N>      = (tr V + |mu|^2 - 2) / 4
///   Var N    = (tr V^2 + 2 mu^T V mu - 2) / 8
///   Cov(a,b) = (tr V_ab V_ab^T + 2 mu_a^T V_ab mu_b) / 8
inline PhotonStats photon_stats(const GaussianState& state, std::size_t mode_a,
                                std::size_t mode_b) {
  detail::check_pair(state, mode_a, mode_b, "photon_stats");
  const auto a = detail::ix(mode_a);
  const auto b = detail::ix(mode_b);
  const Eigen::Matrix2d va = state.cov().block(a, a, 2, 2);
  const Eigen::Matrix2d vb = state.cov().block(b, b, 2, 2);
  const Eigen::Matrix2d vab = state.cov().block(a, b, 2, 2);
  const Eigen::Vector2d ma = state.mean().segment(a, 2);
  const Eigen::Vector2d mb = state.mean().segment(b, 2);

  PhotonStats out;
  out.mean_a = (va.trace() + ma.squaredNorm() - 2.0) / 4.0;
  out.mean_b = (vb.trace() + mb.squaredNorm() - 2.0) / 4.0;
  out.var_a = ((va * va).trace() + 2.0 * ma.dot(va * ma) - 2.0) / 8.0;
  out.var_b = ((vb * vb).trace() + 2.0 * mb.dot(vb * mb) - 2.0) / 8.0;
  out.cov_ab = ((vab * vab.transpose()).trace() + 2.0 * ma.dot(vab * mb)) / 8.0;
  return out;
}

/// Leading-order (bright-beam) fluctuation expansion of the same moments.
/// Agrees with photon_stats to O(1/|alpha|^2); kept as a cross-check.
inline PhotonStats linearized_photon_stats(const GaussianState& state, std::size_t mode_a,
                                           std::size_t mode_b) {
  detail::check_pair(state, mode_a, mode_b, "linearized_photon_stats");
  const auto a = detail::ix(mode_a);
  const auto b = detail::ix(mode_b);
  const Eigen::Vector2d ma = state.mean().segment(a, 2);
  const Eigen::Vector2d mb = state.mean().segment(b, 2);
  PhotonStats out;
  out.mean_a = ma.squaredNorm() / 4.0;
  out.mean_b = mb.squaredNorm() / 4.0;
  out.var_a = ma.dot(state.cov().block(a, a, 2, 2) * ma) / 4.0;
  out.var_b = mb.dot(state.cov().block(b, b, 2, 2) * mb) / 4.0;
  out.cov_ab = ma.dot(state.cov().block(a, b, 2, 2) * mb) / 4.0;
  return out;
}

/// Var(N_a - N_b) / (<N_a> + <N_b>): intensity-difference noise relative to
/// the shot-noise limit of the same total power. 1 for coherent light.
inline double intensity_diff_ratio(const PhotonStats& s) {
  const double total = s.mean_a + s.mean_b;
  if (!(total > 0.0)) {
    throw UndefinedRatio("intensity_diff_ratio: total mean photon number is zero");
  }
  return (s.var_a + s.var_b - 2.0 * s.cov_ab) / total;
}

inline double intensity_diff_ratio(const GaussianState& state, std::size_t mode_a,
                                   std::size_t mode_b) {
  return intensity_diff_ratio(photon_stats(state, mode_a, mode_b));
}

}  // namespace twinbeam
