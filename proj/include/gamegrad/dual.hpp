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

// Forward-mode dual numbers over a dense tangent vector.
//
// Dual<double> carries a value and its gradient with respect to a set of
// seeded variables; nesting Dual<Dual<double>> yields exact second
// derivatives. A dual with an empty tangent is a constant and behaves exactly
// like the underlying real number.
//
// The supported primitive set is +, -, *, /, exp, log, pow and sigmoid.
// Domain violations throw EvaluationError naming the primitive.

#ifndef GAMEGRAD_DUAL_HPP_
#define GAMEGRAD_DUAL_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "gamegrad/errors.hpp"

namespace gamegrad {

inline double primal(double x) { return x; }

inline double exp(double x) { return std::exp(x); }

inline double log(double x) {
  if (!(x > 0.0)) {
    throw EvaluationError("log: argument " + std::to_string(x) +
                          " is not positive");
  }
  return std::log(x);
}

namespace detail {
inline bool is_nonnegative_integer(double k) {
  return k >= 0.0 && std::floor(k) == k;
}
}  // namespace detail

inline double pow(double x, double k) {
  if (!(x > 0.0) && !detail::is_nonnegative_integer(k)) {
    throw EvaluationError("pow: base " + std::to_string(x) +
                          " outside domain for exponent " + std::to_string(k));
  }
  return std::pow(x, k);
}

// Logistic function, evaluated without overflow for large |x|.
inline double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

template <class T>
class Dual {
 public:
  using value_type = T;

  Dual() : value_(0.0) {}
  Dual(double value) : value_(value) {}  // NOLINT: implicit by design of AD
  Dual(const T& value)  // NOLINT
    requires(!std::is_same_v<T, double>)
      : value_(value) {}
  Dual(T value, std::vector<T> tangent)
      : value_(std::move(value)), tangent_(std::move(tangent)) {}

  // Independent variable number `index` out of `count`.
  static Dual variable(T value, std::size_t index, std::size_t count) {
    std::vector<T> tangent(count, T(0.0));
    tangent[index] = T(1.0);
    return Dual(std::move(value), std::move(tangent));
  }

  const T& value() const { return value_; }
  const std::vector<T>& tangent() const { return tangent_; }
  bool is_constant() const { return tangent_.empty(); }

  T derivative(std::size_t k) const {
    return k < tangent_.size() ? tangent_[k] : T(0.0);
  }

  Dual operator-() const {
    std::vector<T> t(tangent_.size());
    for (std::size_t k = 0; k < t.size(); ++k) t[k] = -tangent_[k];
    return Dual(-value_, std::move(t));
  }

  Dual& operator+=(const Dual& o) {
    value_ += o.value_;
    if (tangent_.size() < o.tangent_.size()) tangent_.resize(o.tangent_.size(), T(0.0));
    for (std::size_t k = 0; k < o.tangent_.size(); ++k) tangent_[k] += o.tangent_[k];
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    value_ -= o.value_;
    if (tangent_.size() < o.tangent_.size()) tangent_.resize(o.tangent_.size(), T(0.0));
    for (std::size_t k = 0; k < o.tangent_.size(); ++k) tangent_[k] -= o.tangent_[k];
    return *this;
  }
  Dual& operator*=(const Dual& o) { return *this = *this * o; }
  Dual& operator/=(const Dual& o) { return *this = *this / o; }

  friend Dual operator+(Dual a, const Dual& b) { return a += b; }
  friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
  friend Dual operator+(Dual a, double b) {
    a.value_ += b;
    return a;
  }
  friend Dual operator+(double a, Dual b) {
    b.value_ = a + b.value_;
    return b;
  }
  friend Dual operator-(Dual a, double b) {
    a.value_ -= b;
    return a;
  }
  friend Dual operator-(double a, const Dual& b) {
    Dual r = -b;
    r.value_ = a - b.value_;
    return r;
  }

  friend Dual operator*(const Dual& a, const Dual& b) {
    const std::size_t n = std::max(a.tangent_.size(), b.tangent_.size());
    std::vector<T> t(n);
    for (std::size_t k = 0; k < n; ++k) {
      if (k < a.tangent_.size() && k < b.tangent_.size()) {
        t[k] = a.value_ * b.tangent_[k] + b.value_ * a.tangent_[k];
      } else if (k < b.tangent_.size()) {
        t[k] = a.value_ * b.tangent_[k];
      } else {
        t[k] = b.value_ * a.tangent_[k];
      }
    }
    return Dual(a.value_ * b.value_, std::move(t));
  }
  friend Dual operator*(Dual a, double b) {
    a.value_ *= b;
    for (auto& t : a.tangent_) t *= b;
    return a;
  }
  friend Dual operator*(double a, Dual b) { return std::move(b) * a; }

  friend Dual operator/(const Dual& a, const Dual& b) {
    if (primal(b.value_) == 0.0) throw EvaluationError("division: divisor is zero");
    T q = a.value_ / b.value_;
    const std::size_t n = std::max(a.tangent_.size(), b.tangent_.size());
    std::vector<T> t(n);
    for (std::size_t k = 0; k < n; ++k) {
      T num = k < a.tangent_.size() ? a.tangent_[k] : T(0.0);
      if (k < b.tangent_.size()) num -= q * b.tangent_[k];
      t[k] = num / b.value_;
    }
    return Dual(std::move(q), std::move(t));
  }
  friend Dual operator/(Dual a, double b) {
    if (b == 0.0) throw EvaluationError("division: divisor is zero");
    a.value_ /= b;
    for (auto& t : a.tangent_) t /= b;
    return a;
  }
  friend Dual operator/(double a, const Dual& b) { return Dual(a) / b; }

 private:
  // Chain rule for a unary primitive with derivative `slope` at value().
  Dual apply(T value, const T& slope) const {
    std::vector<T> t(tangent_.size());
    for (std::size_t k = 0; k < t.size(); ++k) t[k] = slope * tangent_[k];
    return Dual(std::move(value), std::move(t));
  }

  template <class U> friend Dual<U> exp(const Dual<U>&);
  template <class U> friend Dual<U> log(const Dual<U>&);
  template <class U> friend Dual<U> pow(const Dual<U>&, double);
  template <class U> friend Dual<U> sigmoid(const Dual<U>&);

  T value_;
  std::vector<T> tangent_;
};

using Dual1 = Dual<double>;
using Dual2 = Dual<Dual<double>>;

template <class T>
double primal(const Dual<T>& x) {
  return primal(x.value());
}

template <class T>
Dual<T> exp(const Dual<T>& x) {
  T e = exp(x.value_);
  return x.apply(e, e);
}

template <class T>
Dual<T> log(const Dual<T>& x) {
  if (!(primal(x) > 0.0)) {
    throw EvaluationError("log: argument " + std::to_string(primal(x)) +
                          " is not positive");
  }
  return x.apply(log(x.value_), 1.0 / x.value_);
}

// x^k for a constant exponent. Requires x > 0 unless k is a nonnegative
// integer.
template <class T>
Dual<T> pow(const Dual<T>& x, double k) {
  if (!(primal(x) > 0.0) && !detail::is_nonnegative_integer(k)) {
    throw EvaluationError("pow: base " + std::to_string(primal(x)) +
                          " outside domain for exponent " + std::to_string(k));
  }
  if (k == 0.0) return Dual<T>(T(1.0));
  T slope = k == 1.0 ? T(1.0) : pow(x.value_, k - 1.0) * k;
  return x.apply(pow(x.value_, k), slope);
}

template <class T>
Dual<T> pow(const Dual<T>& x, const Dual<T>& k) {
  return exp(k * log(x));
}

template <class T>
Dual<T> pow(double x, const Dual<T>& k) {
  return exp(k * log(x));
}

template <class T>
Dual<T> sigmoid(const Dual<T>& x) {
  T s = sigmoid(x.value_);
  T slope = s * sigmoid(-x.value_);
  return x.apply(std::move(s), slope);
}

}  // namespace gamegrad

#endif  // GAMEGRAD_DUAL_HPP_
