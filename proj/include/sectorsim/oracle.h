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
 * Dense reference for small truncations, used only by tests. A truncated
 * state over factors 1..N is expanded into its full coefficient vector with
 * factor 1 as the most significant digit of the mixed-radix index.
 */

#pragma once

#include <vector>

#include "sectorsim/core_model.h"
#include "sectorsim/decoherence.h"
#include "sectorsim/operators.h"

namespace sectorsim::oracle {

/// Largest number of amplitudes densify will produce.
inline constexpr Index kDenseBudget = Index{1} << 20;

struct DenseState {
    std::vector<int> dims;
    ComplexVector amplitudes;
};

DenseState densify(const ProductState &s, Index truncation);
DenseState densify(const CompositeState &s, Index truncation);

Complex dense_overlap(const DenseState &a, const DenseState &b);

/// Applies the first dims.size() factors of every operator term to the dense vector.
DenseState dense_apply(const FactoredOperator &op, const DenseState &s);
Complex dense_expectation(const FactoredOperator &op, const DenseState &s);

/// System block of |out><out| at truncation N, device indices summed out explicitly.
ComplexMatrix dense_density(const MeasurementModel &m, Index truncation);

}  // namespace sectorsim::oracle
