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
 * Operators of the form U = sum_p u_p (x)_n U_n^p, each term given by an
 * explicit prefix of factor operators and a tail that is either the identity
 * or one constant factor operator.
 */

#pragma once

#include <string>
#include <variant>
#include <vector>

#include "sectorsim/core_model.h"
#include "sectorsim/overlaps.h"

namespace sectorsim {

/// Entry-wise tolerance for Hermiticity and unitarity checks.
inline constexpr double kOperatorTolerance = 1e-12;

/// Square matrix acting on one factor space, with a cached operator-norm estimate.
class FactorOperator {
   public:
    explicit FactorOperator(ComplexMatrix matrix);
    static FactorOperator identity(int dim);

    int dim() const { return static_cast<int>(matrix_.rows()); }
    const ComplexMatrix &matrix() const { return matrix_; }
    /// Largest singular value (power iteration on A^H A, relative accuracy 1e-9).
    double norm_bound() const { return norm_bound_; }

    bool is_identity() const;
    bool is_hermitian(double tol = kOperatorTolerance) const;
    bool is_unitary(double tol = kOperatorTolerance) const;

    FactorVector apply(const FactorVector &v) const;
    /// <v|A|v>.
    Complex expectation(const FactorVector &v) const;

   private:
    ComplexMatrix matrix_;
    double norm_bound_ = 0.0;
};

/// Largest singular value of a square matrix by power iteration.
double power_iteration_norm(const ComplexMatrix &matrix, double rel_tol = 1e-9);

struct IdentityOfDim {
    int dim;
};
struct ConstantOperator {
    FactorOperator op;
};
using OperatorTail = std::variant<IdentityOfDim, ConstantOperator>;

struct OperatorTerm {
    Complex coefficient = 1.0;
    std::vector<FactorOperator> prefix_ops;
    OperatorTail tail = IdentityOfDim{2};

    Index prefix_length() const { return static_cast<Index>(prefix_ops.size()); }
    int tail_dim() const;
    bool identity_tail() const { return std::holds_alternative<IdentityOfDim>(tail); }
    /// Operator at 1-based index n; nullptr means identity.
    const FactorOperator *op_at(Index n) const;
};

class FactoredOperator {
   public:
    explicit FactoredOperator(std::vector<OperatorTerm> terms);
    /// Single-term operator acting with op on one site and trivially elsewhere.
    static FactoredOperator single_site(Index site, const FactorOperator &op, int dim);
    /// Single-term operator acting with op on every site.
    static FactoredOperator every_site(const FactorOperator &op);
    static FactoredOperator identity(int dim);

    const std::vector<OperatorTerm> &terms() const { return terms_; }
    /// True iff every term acts as the identity beyond its prefix.
    bool finite_support() const;
    /// sum_p |u_p| prod_{n<=N} ||U_n^p||, an upper bound on the restricted operator norm.
    double norm_bound(Index truncation) const;

   private:
    std::vector<OperatorTerm> terms_;
};

void require_same_shape(const FactoredOperator &op, const ProductState &s);

/// One composite term per operator term; tails become U_tail v.
CompositeState apply(const FactoredOperator &op, const ProductState &s);

enum class SectorActionKind { kPreservesSector, kLeavesSector, kInconclusive };

std::string_view sector_action_kind_name(SectorActionKind kind);

struct SectorActionWitness {
    /// "finite-support", "fixed-tail", "tail-deficit" or "" when inconclusive.
    std::string reason;
    /// Largest prefix length over the terms (the support for finite-support operators).
    Index support_size = 0;
    /// Per term: <v|U_tail v> with v the state's tail limit (1 for identity tails).
    std::vector<Complex> tail_expectations;
    /// For tail-deficit: the term and its |<v|U_tail v> - 1|.
    int term_index = -1;
    double deficit = 0.0;
};

struct SectorActionVerdict {
    SectorActionKind kind = SectorActionKind::kInconclusive;
    SectorActionWitness witness;
};

/// Requires s to be non-trivial convergent with unit-norm factors.
SectorActionVerdict sector_action(const FactoredOperator &op, const ProductState &s);

/// Re-derives the witness from op and s; false if it does not hold.
bool verify_sector_action(const FactoredOperator &op, const ProductState &s, const SectorActionVerdict &verdict);

/// <Psi_N|U_N|Psi_N> = sum_p u_p prod_{n<=N} <psi_n|U_n^p|psi_n> at each truncation.
OverlapSweep expectation_sweep(const FactoredOperator &op, const ProductState &s,
                               const std::vector<Index> &truncations);

/// exp(A) by scaling and squaring with a Taylor kernel; intended for factor sizes (dim <= 16).
ComplexMatrix matrix_exponential(const ComplexMatrix &a);

struct EvolutionResult {
    CompositeState state;
    /// <Psi_N| exp(i H_N t) |Psi_N>.
    Complex survival_amplitude;
    Index truncation;
};

/**
 * Evolve s under H = sum_n G_n where the site generator G_n is
 * sum_p u_p h_n^p, h_n^p being term p's operator at site n. Identity entries
 * (explicit or from an identity tail) contribute no local generator. Each site evolves by
 * exp(i t G_n); no global exponential is formed.
 */
EvolutionResult evolve(const FactoredOperator &generator, const ProductState &s, double t, Index truncation);

}  // namespace sectorsim
