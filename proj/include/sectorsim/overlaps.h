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
 * Truncated inner products of product and composite states.
 *
 * The truncation N keeps indices 1..N in the ambient order. Up to 64 factors
 * the product is multiplied directly; beyond that it is carried in
 * log-modulus + phase form (see ProductAccumulator).
 */

#pragma once

#include <optional>
#include <vector>

#include "sectorsim/core_model.h"
#include "sectorsim/infinite_products.h"
#include "sectorsim/log_product.h"

namespace sectorsim {

/// <a_n|b_n> for a single index.
Complex factor_overlap(const ProductState &a, const ProductState &b, Index n);

/// prod_{n<=N} <a_n|b_n>.
Complex truncated_overlap(const ProductState &a, const ProductState &b, Index truncation);
LogComplex truncated_overlap_log(const ProductState &a, const ProductState &b, Index truncation);

/// sum_{m,n} conj(A_m) B_n prod_{k<=N} <a^m_k|b^n_k>.
Complex composite_overlap(const CompositeState &a, const CompositeState &b, Index truncation);
LogComplex composite_overlap_log(const CompositeState &a, const CompositeState &b, Index truncation);

/// Overlap values sampled at an increasing list of truncations.
struct OverlapSweep {
    std::vector<Index> truncations;
    std::vector<Complex> values;
    /// ln|value|, exact even where value underflows; -inf after an exact zero.
    std::vector<double> log_modulus;

    std::size_t size() const { return truncations.size(); }
    /// Smallest sampled N with |value| < eps.
    std::optional<Index> first_below(double eps) const;
};

/// 1, 2, ..., n_max.
std::vector<Index> truncation_range(Index n_max);

OverlapSweep overlap_sweep(const ProductState &a, const ProductState &b, const std::vector<Index> &truncations);

/**
 * N -> infinity overlap of two non-trivial convergent sequences: exactly 0 for
 * different sectors, otherwise the (quasi-)convergence value of the per-factor
 * overlap product. Throws InconclusiveSector when the sector test cannot decide.
 */
Complex asymptotic_overlap(const ProductState &a, const ProductState &b, const ClassifyOptions &options = {});

}  // namespace sectorsim
