// Copyright 2026 The Sectorsim Authors
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

/**
 * @file
 * System-plus-device measurement model. The system has M outcomes with
 * amplitudes s_i; outcome i is correlated with the device product state d_i.
 * Device states must lie in pairwise different sectors.
 */

#pragma once

#include <map>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "sectorsim/core_model.h"

namespace sectorsim {

class MeasurementModel {
   public:
    /// Validates normalization, unit device factors and pairwise DifferentSector verdicts.
    MeasurementModel(std::vector<Complex> amplitudes, std::vector<ProductState> devices,
                     std::optional<ProductState> ready_state = std::nullopt);

    int system_dim() const { return static_cast<int>(amplitudes_.size()); }
    const std::vector<Complex> &amplitudes() const { return amplitudes_; }
    const std::vector<ProductState> &devices() const { return devices_; }
    const std::optional<ProductState> &ready_state() const { return ready_; }
    /// |s_i|^2.
    std::vector<double> probabilities() const;

   private:
    std::vector<Complex> amplitudes_;
    std::vector<ProductState> devices_;
    std::optional<ProductState> ready_;
};

/// sum_i s_i |i> (x) |d_i>, the system factor prepended as factor 1 of dimension M.
CompositeState premeasurement_state(const MeasurementModel &m);

struct TruncatedDensityMatrix {
    Index truncation = 0;
    /// rho_ij = s_i conj(s_j) prod_{n<=N} <d_j_n|d_i_n>.
    ComplexMatrix entries;
    /// ln|rho_ij|, finite even where the entry underflows; -inf for exact zeros.
    Eigen::MatrixXd log_abs;

    double trace() const;
    bool is_hermitian(double tol = 1e-12) const;
    double min_eigenvalue() const;
};

TruncatedDensityMatrix truncated_density(const MeasurementModel &m, Index truncation);

/// Per pair (i, j), i < j: smallest N with |rho_ij(N)| < eps; nullopt when it never happens
/// (tail overlaps of modulus one) or is not reached within scan_limit for parametric tails.
using HorizonMap = std::map<std::pair<int, int>, std::optional<Index>>;

HorizonMap decoherence_horizon(const MeasurementModel &m, double eps, Index scan_limit = 10'000'000);

/// Outcome i with probability |s_i|^2, drawn from the caller's generator.
int sample_outcome(const MeasurementModel &m, std::mt19937_64 &rng);
int sample_outcome(const MeasurementModel &m, std::uint64_t seed);

/// Outcome histogram over shots draws from one generator seeded with seed.
std::vector<Index> sample_counts(const MeasurementModel &m, Index shots, std::uint64_t seed);

/// The model with s replaced by the basis vector e_i.
MeasurementModel collapse(const MeasurementModel &m, int outcome);

}  // namespace sectorsim
