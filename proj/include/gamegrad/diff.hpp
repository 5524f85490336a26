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

#ifndef GAMEGRAD_DIFF_HPP_
#define GAMEGRAD_DIFF_HPP_

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "gamegrad/dual.hpp"
#include "gamegrad/errors.hpp"

namespace gamegrad {

// Finite-difference oracle settings. The gradient uses a relative central
// step fd_step with absolute floor fd_floor; the Hessian uses the wider
// fd_hessian_step (relative, same value as floor) because second differences
// lose twice as many digits to rounding.
struct DiffConfig {
  double fd_step = 1e-5;
  double fd_floor = 1e-7;
  double fd_hessian_step = 1e-4;
  double fd_tolerance = 1e-5;

  void validate() const {
    if (!(fd_step > 0.0) || !(fd_floor > 0.0) || !(fd_hessian_step > 0.0) ||
        !(fd_tolerance > 0.0)) {
      throw ConfigError("DiffConfig: steps and tolerance must be positive");
    }
  }
};

// Scalar functions are callables accepting std::span<const S> for S in
// {Dual1, Dual2} and returning S. A generic lambda taking `auto x` works.

namespace detail {

inline std::vector<Dual1> constants(const Eigen::VectorXd& theta) {
  std::vector<Dual1> x(theta.size());
  for (Eigen::Index k = 0; k < theta.size(); ++k) x[k] = Dual1(theta[k]);
  return x;
}

template <class F>
double evaluate(const F& f, const Eigen::VectorXd& theta) {
  const auto x = constants(theta);
  return primal(f(std::span<const Dual1>(x)));
}

// Seeds every coordinate in the outer tangent and the coordinates
// [inner_begin, inner_begin + inner_count) in the inner tangent.
inline std::vector<Dual2> seed_second_order(const Eigen::VectorXd& theta,
                                            std::size_t inner_begin,
                                            std::size_t inner_count) {
  const std::size_t d = theta.size();
  std::vector<Dual2> x;
  x.reserve(d);
  for (std::size_t k = 0; k < d; ++k) {
    Dual1 inner = (k >= inner_begin && k < inner_begin + inner_count)
                      ? Dual1::variable(theta[k], k - inner_begin, inner_count)
                      : Dual1(theta[k]);
    x.push_back(Dual2::variable(std::move(inner), k, d));
  }
  return x;
}

}  // namespace detail

template <class F>
Eigen::VectorXd grad(const F& f, const Eigen::VectorXd& theta) {
  const std::size_t d = theta.size();
  std::vector<Dual1> x;
  x.reserve(d);
  for (std::size_t k = 0; k < d; ++k) x.push_back(Dual1::variable(theta[k], k, d));
  const Dual1 y = f(std::span<const Dual1>(x));
  Eigen::VectorXd g(d);
  for (std::size_t k = 0; k < d; ++k) g[k] = y.derivative(k);
  return g;
}

// Exact Hessian, symmetrized as (M + M^T) / 2 so the result is bitwise
// symmetric.
template <class F>
Eigen::MatrixXd hessian(const F& f, const Eigen::VectorXd& theta) {
  const std::size_t d = theta.size();
  const auto x = detail::seed_second_order(theta, 0, d);
  const Dual2 y = f(std::span<const Dual2>(x));
  Eigen::MatrixXd h(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    const Dual1 row = y.derivative(j);
    for (std::size_t k = 0; k < d; ++k) h(j, k) = row.derivative(k);
  }
  Eigen::MatrixXd sym(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = 0; k < d; ++k) sym(j, k) = 0.5 * (h(j, k) + h(k, j));
  }
  return sym;
}

template <class F>
Eigen::VectorXd fd_grad(const F& f, const Eigen::VectorXd& theta,
                        const DiffConfig& cfg = {}) {
  cfg.validate();
  const Eigen::Index d = theta.size();
  Eigen::VectorXd g(d);
  for (Eigen::Index k = 0; k < d; ++k) {
    const double h = std::max(cfg.fd_step * std::abs(theta[k]), cfg.fd_floor);
    Eigen::VectorXd up = theta, down = theta;
    up[k] += h;
    down[k] -= h;
    g[k] = (detail::evaluate(f, up) - detail::evaluate(f, down)) /
           (up[k] - down[k]);
  }
  return g;
}

template <class F>
Eigen::MatrixXd fd_hessian(const F& f, const Eigen::VectorXd& theta,
                           const DiffConfig& cfg = {}) {
  cfg.validate();
  const Eigen::Index d = theta.size();
  Eigen::VectorXd step(d);
  for (Eigen::Index k = 0; k < d; ++k) {
    step[k] = cfg.fd_hessian_step * std::max(std::abs(theta[k]), 1.0);
  }
  Eigen::MatrixXd h(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i; j < d; ++j) {
      auto at = [&](double si, double sj) {
        Eigen::VectorXd p = theta;
        p[i] += si * step[i];
        p[j] += sj * step[j];
        return detail::evaluate(f, p);
      };
      double v;
      if (i == j) {
        v = (at(1.0, 1.0) - 2.0 * detail::evaluate(f, theta) + at(-1.0, -1.0)) /
            (4.0 * step[i] * step[i]);
      } else {
        v = (at(1.0, 1.0) - at(1.0, -1.0) - at(-1.0, 1.0) + at(-1.0, -1.0)) /
            (4.0 * step[i] * step[j]);
      }
      h(i, j) = v;
      h(j, i) = v;
    }
  }
  return h;
}

// max|a - b| / max(1, max|b|): relative where b is large, absolute near zero.
inline double relative_error(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("relative_error: shape mismatch");
  }
  if (a.size() == 0) return 0.0;
  const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
  return (a - b).cwiseAbs().maxCoeff() / scale;
}

}  // namespace gamegrad

#endif  // GAMEGRAD_DIFF_HPP_
