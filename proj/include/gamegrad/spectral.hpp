// Copyright 2026 The gamegrad Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GAMEGRAD_SPECTRAL_HPP_
#define GAMEGRAD_SPECTRAL_HPP_

#include <complex>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "gamegrad/game.hpp"

namespace gamegrad {

struct Spectrum {
  std::vector<std::complex<double>> eigenvalues;
  double residual = 0.0;  // max |M v - lambda v| over unit eigenvectors

  double min_real_part() const;
};

// All eigenvalues of a real square matrix. Throws NumericalError if the QR
// iteration does not converge or the residual exceeds 1e-8 * |M|.
Spectrum eigenvalues(const Eigen::MatrixXd& m);

// Smallest and largest eigenvalue of the symmetric part (M + M^T) / 2.
struct SymmetricRange {
  double min = 0.0;
  double max = 0.0;
};
SymmetricRange symmetric_part_range(const Eigen::MatrixXd& m);

double smallest_singular_value(const Eigen::MatrixXd& m);

struct FixedPointReport {
  double tolerance = 1e-8;
  double xi_norm = 0.0;
  bool is_fixed = false;       // |xi| <= tol
  bool stable = false;         // lambda_min(S) >= -tol, S = (H + H^T) / 2
  bool unstable = false;       // lambda_max(S) < -tol
  bool strict_saddle = false;  // some eigenvalue of H has real part < -tol
  bool invertible = false;     // sigma_min(H) > tol
  Spectrum hessian_spectrum;
  SymmetricRange symmetric_part;
  double sigma_min = 0.0;
};

// Flags describe H at theta whether or not theta is a fixed point; read them
// together with is_fixed.
FixedPointReport classify_fixed_point(const Game& game, const Eigen::VectorXd& theta,
                                      double tol = 1e-8);

struct StabilityEntry {
  double alpha = 0.0;
  bool positive_stable = false;  // every eigenvalue of (I - alpha H_o) H has Re > 0
  Spectrum spectrum;             // of (I - alpha H_o) H
  double symmetric_min = 0.0;    // lambda_min of its symmetric part
};

struct StabilityScan {
  std::vector<StabilityEntry> entries;
  // Largest grid value such that every grid value up to it is positive stable.
  std::optional<double> largest_stable_alpha;
};

// Positive stability of the LookAhead Jacobian (I - alpha H_o) H across a grid
// of learning rates. Throws ConfigError if a diagonal block of H is not
// symmetric.
StabilityScan lookahead_stability_scan(const Eigen::MatrixXd& h,
                                       const PlayerPartition& partition,
                                       const std::vector<double>& alphas);

// min_k 2 a_k / (a_k^2 + b_k^2) over eigenvalues a_k + i b_k. Throws
// std::domain_error if some a_k <= 0.
double ostrowski_alpha_bound(const Spectrum& spectrum);

// H = S + A with S a random PSD Gram matrix and A antisymmetric with zero
// diagonal blocks, redrawn until sigma_min(H) > 1e-6.
Eigen::MatrixXd random_admissible_hessian(const PlayerPartition& partition,
                                          std::mt19937_64& rng);

}  // namespace gamegrad

#endif  // GAMEGRAD_SPECTRAL_HPP_
