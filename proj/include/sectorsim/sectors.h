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
 * Sequence classes and sector equivalence.
 *
 * A sequence {phi_n} is convergent when prod ||phi_n|| converges, and
 * non-trivial convergent when in addition sum |sqrt<phi_n|phi_n> - 1|
 * converges. Two non-trivial convergent sequences share a sector when
 * sum |<phi_n|psi_n> - 1| converges. Sectors are only ever compared pairwise;
 * there is no registry of them.
 */

#pragma once

#include <map>
#include <string>
#include <vector>

#include "sectorsim/core_model.h"

namespace sectorsim {

/// Per-term values below this are treated as exactly zero when testing sector membership.
inline constexpr double kSectorZeroTolerance = 1e-12;
/// Per-term values above this are treated as a strictly positive constant.
inline constexpr double kSectorGapTolerance = 1e-9;

enum class SequenceKind { kNotConvergent, kConvergent, kNonTrivialConvergent };

std::string_view sequence_kind_name(SequenceKind kind);

struct SequenceEvidence {
    /// False when the verdict rests on a numeric scan of a custom tail.
    bool conclusive = true;
    std::string test;
    /// Limit of ||phi_n|| along the tail.
    double tail_norm_limit = 1.0;
    /// Product of the prefix norms.
    double prefix_norm_product = 1.0;
    /// Partial sum of |sqrt<phi|phi> - 1| over the examined terms.
    double series_partial_sum = 0.0;
    Index terms_examined = 0;
};

struct SequenceClass {
    SequenceKind kind = SequenceKind::kNotConvergent;
    SequenceEvidence evidence;

    bool is_c_sequence() const { return kind != SequenceKind::kNotConvergent; }
    bool is_c0_sequence() const { return kind == SequenceKind::kNonTrivialConvergent; }
};

SequenceClass classify_sequence(const ProductState &s);

enum class SectorKind { kSameSector, kDifferentSector, kInconclusive };

std::string_view sector_kind_name(SectorKind kind);

struct SectorCertificate {
    /// Prefix indices where the two factors are not identical.
    std::vector<Index> differing_indices;
    /// sum over the explicit prefix span of |<a_n|b_n> - 1|.
    double prefix_series_sum = 0.0;
    /// |<La|Lb> - 1| for the two tail limit vectors.
    double limit_term = 0.0;
    /// "constant-tails-match", "identical-tails", "geometric", "p-series", "eventually-constant",
    /// "limit-gap", "nonsummable-deviation" or "" for inconclusive verdicts.
    std::string comparison;
    /// Ratio or exponent of the comparison series.
    double comparison_parameter = 0.0;
    /// DifferentSector witness: |<a_n|b_n> - 1| >= coefficient * n^-exponent for all n >= from_index.
    /// exponent 0 means a constant lower bound.
    double lower_bound_coefficient = 0.0;
    double lower_bound_exponent = 0.0;
    Index witness_from_index = 0;
    std::string note;
};

struct SectorVerdict {
    SectorKind kind = SectorKind::kInconclusive;
    SectorCertificate certificate;
};

/// Requires both inputs to be non-trivial convergent sequences of the same shape.
SectorVerdict same_sector(const ProductState &a, const ProductState &b);

/// Independent re-check of a verdict's certificate by direct evaluation of the series terms.
bool verify_sector_certificate(const ProductState &a, const ProductState &b, const SectorVerdict &verdict);

/// Same sector, every factor divided by its norm (phases kept).
ProductState normed_representative(const ProductState &s);

/// Replace the factors at the given 1-based indices, materializing the tail where needed.
ProductState apply_finite_change(const ProductState &s, const std::map<Index, FactorVector> &changes);

}  // namespace sectorsim
