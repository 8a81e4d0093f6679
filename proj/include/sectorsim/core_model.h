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
 * Factor spaces, infinite product states and finite sums of them.
 *
 * An infinite product state is stored as a finite prefix of explicit factor
 * vectors (indices 1..P) followed by a tail rule that yields the factor at
 * every index beyond the prefix. Indices are 1-based throughout the library
 * and follow the ambient order of the countable index set.
 */

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace sectorsim {

using Complex = std::complex<double>;
using Index = std::int64_t;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

/// Tolerance used when a quantity must equal one (norms, per-term overlaps).
inline constexpr double kUnitTolerance = 1e-12;

/// One vector in a single factor space H_alpha.
class FactorVector {
   public:
    explicit FactorVector(ComplexVector amplitudes);
    FactorVector(std::initializer_list<Complex> amplitudes);

    /// Unit vector |k> of a dim-dimensional factor space.
    static FactorVector basis(int dim, int k);

    int dim() const { return static_cast<int>(amplitudes_.size()); }
    const ComplexVector &amplitudes() const { return amplitudes_; }
    Complex operator[](int k) const { return amplitudes_[k]; }

    double squared_norm() const { return squared_norm_; }
    double norm() const;
    bool is_unit() const;

    FactorVector scaled(Complex factor) const;

    /// Exact component-wise equality.
    bool operator==(const FactorVector &other) const;

   private:
    ComplexVector amplitudes_;
    double squared_norm_ = 0.0;
};

/// <bra|ket>, antilinear in the first argument.
Complex inner(const FactorVector &bra, const FactorVector &ket);

/// Spin-1/2 factor vectors in the S^z basis {|up>, |down>}.
namespace spin {
FactorVector up();
FactorVector down();
FactorVector plus();
FactorVector minus();
/// cos(theta/2)|up> + sin(theta/2)|down>, i.e. |up> rotated by theta about y.
FactorVector rotated(double theta);
}  // namespace spin

struct ConstantFactor {
    FactorVector vector;
};

enum class DeviationClass { kEventuallyConstant, kGeometric, kPSeries, kCustomCertified };

/**
 * Closed-form deviation delta(n) of a parametric tail from its base vector,
 * tagged with the convergence class of sum_n |delta(n)|.
 *
 *   eventually-constant: delta(n) = amplitude for n < onset, 0 afterwards
 *   geometric:           delta(n) = amplitude * ratio^n, 0 < ratio < 1
 *   p-series:            delta(n) = amplitude * n^-exponent, exponent > 0
 *   custom-certified:    caller-provided callback and summability claim
 */
class DeviationLaw {
   public:
    static DeviationLaw eventually_constant(double amplitude, Index onset);
    static DeviationLaw geometric(double amplitude, double ratio);
    static DeviationLaw p_series(double amplitude, double exponent);
    static DeviationLaw custom_certified(std::function<double(Index)> fn, bool certified_summable);

    double operator()(Index n) const;

    DeviationClass cls() const { return cls_; }
    double amplitude() const { return amplitude_; }
    double ratio() const { return ratio_; }
    double exponent() const { return exponent_; }
    Index onset() const { return onset_; }

    /// Whether sum_n |delta(n)| converges (exact for every closed-form class).
    bool summable() const;

    /// Parameter-wise equality; custom laws never compare equal.
    bool same_law(const DeviationLaw &other) const;

   private:
    DeviationLaw() = default;

    DeviationClass cls_ = DeviationClass::kEventuallyConstant;
    double amplitude_ = 0.0;
    double ratio_ = 0.0;
    double exponent_ = 0.0;
    Index onset_ = 1;
    bool certified_summable_ = false;
    std::function<double(Index)> custom_;
};

std::string_view deviation_class_name(DeviationClass cls);

enum class FamilyMode {
    /// factor(n) = (1 - d) base + sqrt(2d - d^2) partner, unit norm, overlap with base 1 - d.
    kRotation,
    /// factor(n) = (1 + d) base, norm 1 + d.
    kScaling,
};

/**
 * Tail whose factor at index n is generated from an orthonormal pair
 * (base, partner) and a deviation law. The per-factor overlap with the base
 * vector is the declared closed-form map n -> <base|factor(n)>.
 */
class ParametricFamily {
   public:
    ParametricFamily(FamilyMode mode, FactorVector base, DeviationLaw law,
                     std::optional<FactorVector> partner = std::nullopt, Index shift = 0);

    FamilyMode mode() const { return mode_; }
    const FactorVector &base() const { return base_; }
    const FactorVector &partner() const { return partner_; }
    const DeviationLaw &law() const { return law_; }
    Index shift() const { return shift_; }
    int dim() const { return base_.dim(); }

    double deviation(Index n) const { return law_(n - shift_); }
    FactorVector factor(Index n) const;
    /// <base|factor(n)>.
    double overlap_with_base(Index n) const;
    /// ||factor(n) - base||.
    double distance_from_base(Index n) const;

    /// Same family re-indexed so that factor(n + k) of the result equals factor(n) of this.
    ParametricFamily shifted(Index k) const;
    /// Family obtained by applying a unitary to base and partner.
    ParametricFamily transformed(const ComplexMatrix &unitary) const;

    bool same_family(const ParametricFamily &other) const;

   private:
    FamilyMode mode_;
    FactorVector base_;
    FactorVector partner_;
    DeviationLaw law_;
    Index shift_;
};

using TailRule = std::variant<ConstantFactor, ParametricFamily>;

int tail_dim(const TailRule &tail);
/// The vector the tail factors converge to (the constant vector, or the family base).
const FactorVector &tail_limit(const TailRule &tail);

/// Immutable infinite product state: explicit prefix plus tail rule.
class ProductState {
   public:
    ProductState(std::vector<FactorVector> prefix, TailRule tail, std::string label = {});

    const std::vector<FactorVector> &prefix() const { return prefix_; }
    Index prefix_length() const { return static_cast<Index>(prefix_.size()); }
    const TailRule &tail() const { return tail_; }
    const std::string &label() const { return label_; }

    bool has_constant_tail() const { return std::holds_alternative<ConstantFactor>(tail_); }
    int tail_dim() const { return sectorsim::tail_dim(tail_); }
    int dim_at(Index n) const;

    /// Factor at 1-based index n, materializing the tail if needed.
    FactorVector factor(Index n) const;
    /// Pointer to a stored factor (prefix or constant tail), nullptr for a parametric tail index.
    const FactorVector *stored_factor(Index n) const;

    ProductState with_label(std::string label) const;

   private:
    std::vector<FactorVector> prefix_;
    TailRule tail_;
    std::string label_;
};

ProductState make_product_state(std::vector<FactorVector> prefix, TailRule tail,
                                std::string label = {});

/// Uniform product state carrying v at every index.
ProductState constant_state(const FactorVector &v, std::string label = {});

bool same_shape(const ProductState &a, const ProductState &b);
void require_same_shape(const ProductState &a, const ProductState &b);

struct CompositeTerm {
    Complex coefficient;
    ProductState state;
};

/// Finite complex-weighted sum of product states sharing one shape.
class CompositeState {
   public:
    explicit CompositeState(std::vector<CompositeTerm> terms);
    static CompositeState single(ProductState state, Complex coefficient = 1.0);

    const std::vector<CompositeTerm> &terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    const ProductState &front() const { return terms_.front().state; }

   private:
    std::vector<CompositeTerm> terms_;
};

void require_same_shape(const CompositeState &a, const CompositeState &b);

/// <a-b|a-b> at truncation N.
double distance(const CompositeState &a, const CompositeState &b, Index truncation);

}  // namespace sectorsim
