// Copyright 2026 The randlchs Authors.
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

#pragma once

#include <cmath>
#include <cstdint>

#include "randlchs/types.hpp"

namespace randlchs {

/// Streaming mean and scatter of scalar samples (Welford update, Chan merge).
class RunningStat {
 public:
  void add(double x) {
    ++n_;
    const double d = x - mean_;
    mean_ += d / static_cast<double>(n_);
    m2_ += d * (x - mean_);
  }

  void merge(const RunningStat& other) {
    if (other.n_ == 0) return;
    if (n_ == 0) {
      *this = other;
      return;
    }
    const double na = static_cast<double>(n_), nb = static_cast<double>(other.n_);
    const double d = other.mean_ - mean_;
    mean_ += d * nb / (na + nb);
    m2_ += other.m2_ + d * d * na * nb / (na + nb);
    n_ += other.n_;
  }

  std::uint64_t count() const { return n_; }
  double mean() const { return mean_; }
  double variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }
  double stddev() const { return std::sqrt(variance()); }
  double standard_error() const {
    return n_ > 1 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
  }

 private:
  std::uint64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// Streaming mean and per-component scatter of complex vector samples.
class RunningVectorStat {
 public:
  void add(const CVector& x) {
    if (n_ == 0) {
      mean_ = CVector::Zero(x.size());
      m2_ = RVector::Zero(x.size());
    }
    if (x.size() != mean_.size()) throw DimensionError("sample dimension changed");
    ++n_;
    const CVector d = x - mean_;
    mean_ += d / static_cast<double>(n_);
    m2_ += d.cwiseProduct((x - mean_).conjugate()).real();
  }

  void merge(const RunningVectorStat& other) {
    if (other.n_ == 0) return;
    if (n_ == 0) {
      *this = other;
      return;
    }
    const double na = static_cast<double>(n_), nb = static_cast<double>(other.n_);
    const CVector d = other.mean_ - mean_;
    mean_ += d * (nb / (na + nb));
    m2_ += other.m2_ + d.cwiseAbs2() * (na * nb / (na + nb));
    n_ += other.n_;
  }

  std::uint64_t count() const { return n_; }
  const CVector& mean() const { return mean_; }

  /// Per-component variance of the complex samples.
  RVector variance() const {
    if (n_ < 2) return RVector::Zero(m2_.size());
    return m2_ / static_cast<double>(n_ - 1);
  }

  /// Scalar standard error of the mean vector: sqrt(sum_i Var_i / n).
  double standard_error() const {
    if (n_ < 2) return 0.0;
    return std::sqrt(variance().sum() / static_cast<double>(n_));
  }

 private:
  std::uint64_t n_ = 0;
  CVector mean_;
  RVector m2_;
};

}  // namespace randlchs
