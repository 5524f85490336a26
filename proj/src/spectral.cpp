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

#include "gamegrad/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "gamegrad/errors.hpp"

namespace gamegrad {

double Spectrum::min_real_part() const {
  double out = std::numeric_limits<double>::infinity();
  for (const auto& z : eigenvalues) out = std::min(out, z.real());
  return out;
}

Spectrum eigenvalues(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("eigenvalues: matrix is not square");
  Spectrum out;
  if (m.size() == 0) return out;
  if (!m.allFinite()) throw NumericalError("eigenvalues: matrix has non-finite entries");

  Eigen::EigenSolver<Eigen::MatrixXd> solver;
  solver.setMaxIterations(static_cast<Eigen::Index>(100 * m.rows()));
  solver.compute(m, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigenvalues: QR iteration did not converge");
  }
  const Eigen::VectorXcd values = solver.eigenvalues();
  const Eigen::MatrixXcd vectors = solver.eigenvectors();
  const Eigen::MatrixXcd mc = m.cast<std::complex<double>>();
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    out.eigenvalues.push_back(values[k]);
    const Eigen::VectorXcd v = vectors.col(k).normalized();
    out.residual = std::max(out.residual, (mc * v - values[k] * v).norm());
  }
  const double scale = std::max(m.norm(), std::numeric_limits<double>::min());
  if (out.residual > 1e-8 * scale) {
    throw NumericalError("eigenvalues: residual " + std::to_string(out.residual) +
                         " exceeds tolerance");
  }
  return out;
}

SymmetricRange symmetric_part_range(const Eigen::MatrixXd& m) {
  const Eigen::MatrixXd s = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(s, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("symmetric eigensolver did not converge");
  }
  return {solver.eigenvalues().minCoeff(), solver.eigenvalues().maxCoeff()};
}

double smallest_singular_value(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues().minCoeff();
}

FixedPointReport classify_fixed_point(const Game& game, const Eigen::VectorXd& theta,
                                      double tol) {
  const GameDerivatives d = derivatives(game, theta);
  FixedPointReport r;
  r.tolerance = tol;
  r.xi_norm = d.xi.norm();
  r.is_fixed = r.xi_norm <= tol;
  r.symmetric_part = symmetric_part_range(d.hessian);
  r.stable = r.symmetric_part.min >= -tol;
  r.unstable = r.symmetric_part.max < -tol;
  r.hessian_spectrum = eigenvalues(d.hessian);
  r.strict_saddle = r.hessian_spectrum.min_real_part() < -tol;
  r.sigma_min = smallest_singular_value(d.hessian);
  r.invertible = r.sigma_min > tol;
  return r;
}

StabilityScan lookahead_stability_scan(const Eigen::MatrixXd& h,
                                       const PlayerPartition& partition,
                                       const std::vector<double>& alphas) {
  const BlockSplit split = split_blocks(h, partition);
  for (std::size_t i = 0; i < partition.players(); ++i) {
    const auto o = static_cast<Eigen::Index>(partition.offset(i));
    const auto s = static_cast<Eigen::Index>(partition.size(i));
    const Eigen::MatrixXd block = h.block(o, o, s, s);
    const double scale = std::max(1.0, block.cwiseAbs().maxCoeff());
    if ((block - block.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
      throw ConfigError("diagonal block of player " + std::to_string(i) +
                        " is not symmetric");
    }
  }

  const auto d = h.rows();
  StabilityScan scan;
  std::vector<std::pair<double, bool>> verdicts;
  for (double alpha : alphas) {
    StabilityEntry e;
    e.alpha = alpha;
    const Eigen::MatrixXd g =
        (Eigen::MatrixXd::Identity(d, d) - alpha * split.off_diagonal) * h;
    e.spectrum = eigenvalues(g);
    e.positive_stable = e.spectrum.min_real_part() > 0.0;
    e.symmetric_min = symmetric_part_range(g).min;
    verdicts.emplace_back(alpha, e.positive_stable);
    scan.entries.push_back(std::move(e));
  }
  std::sort(verdicts.begin(), verdicts.end());
  for (const auto& [alpha, ok] : verdicts) {
    if (!ok) break;
    scan.largest_stable_alpha = alpha;
  }
  return scan;
}

double ostrowski_alpha_bound(const Spectrum& spectrum) {
  if (spectrum.eigenvalues.empty()) throw std::domain_error("ostrowski: empty spectrum");
  double bound = std::numeric_limits<double>::infinity();
  for (const auto& z : spectrum.eigenvalues) {
    const double a = z.real(), b = z.imag();
    if (!(a > 0.0)) {
      throw std::domain_error("ostrowski: eigenvalue with non-positive real part " +
                              std::to_string(a));
    }
    bound = std::min(bound, 2.0 * a / (a * a + b * b));
  }
  return bound;
}

Eigen::MatrixXd random_admissible_hessian(const PlayerPartition& partition,
                                          std::mt19937_64& rng) {
  constexpr int kMaxAttempts = 1000;
  constexpr double kFloor = 1e-3;
  const auto d = static_cast<Eigen::Index>(partition.dim());
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<Eigen::Index> rank_dist(1, d);

  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const Eigen::Index rank = rank_dist(rng);
    Eigen::MatrixXd factor(d, rank);
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = 0; j < rank; ++j) factor(i, j) = normal(rng);
    }
    Eigen::MatrixXd gram = factor * factor.transpose() / static_cast<double>(rank);
    gram = 0.5 * (gram + gram.transpose());
    gram.diagonal().array() += kFloor;

    Eigen::MatrixXd skew = Eigen::MatrixXd::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = i + 1; j < d; ++j) {
        if (partition.owner(i) == partition.owner(j)) continue;
        const double v = normal(rng);
        skew(i, j) = v;
        skew(j, i) = -v;
      }
    }
    Eigen::MatrixXd h = gram + skew;
    // Unit spectral norm keeps a fixed learning-rate grid meaningful across
    // draws.
    h /= Eigen::JacobiSVD<Eigen::MatrixXd>(h).singularValues()(0);
    if (smallest_singular_value(h) > 1e-6) return h;
  }
  throw NumericalError("random_admissible_hessian: no invertible draw after " +
                       std::to_string(kMaxAttempts) + " attempts");
}

}  // namespace gamegrad
