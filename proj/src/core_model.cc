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

#include "sectorsim/core_model.h"

#include <algorithm>
#include <cmath>

#include "sectorsim/errors.h"
#include "sectorsim/overlaps.h"

namespace sectorsim {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::kShapeMismatch: return "ShapeMismatch";
        case ErrorCode::kInvalidAmplitude: return "InvalidAmplitude";
        case ErrorCode::kInvalidArgument: return "InvalidArgument";
        case ErrorCode::kUndeclaredTailClass: return "UndeclaredTailClass";
        case ErrorCode::kNotQuasiConvergent: return "NotQuasiConvergent";
        case ErrorCode::kPreconditionViolated: return "PreconditionViolated";
        case ErrorCode::kZeroNormFactor: return "ZeroNormFactor";
        case ErrorCode::kInconclusiveSector: return "InconclusiveSector";
        case ErrorCode::kNonHermitianGenerator: return "NonHermitianGenerator";
        case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::kNonIntegralFraction: return "NonIntegralFraction";
        case ErrorCode::kDimensionBudgetExceeded: return "DimensionBudgetExceeded";
        case ErrorCode::kUnsupportedTail: return "UnsupportedTail";
        case ErrorCode::kUsageError: return "UsageError";
        case ErrorCode::kIoError: return "IoError";
    }
    return "Unknown";
}

// ---------------------------------------------------------------------------
// FactorVector

FactorVector::FactorVector(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() < 1) {
        throw Error(ErrorCode::kInvalidAmplitude, "factor vector must have dimension >= 1");
    }
    for (Eigen::Index k = 0; k < amplitudes_.size(); ++k) {
        if (!std::isfinite(amplitudes_[k].real()) || !std::isfinite(amplitudes_[k].imag())) {
            throw Error(ErrorCode::kInvalidAmplitude, "non-finite amplitude",
                        "component " + std::to_string(k));
        }
    }
    squared_norm_ = amplitudes_.squaredNorm();
}

FactorVector::FactorVector(std::initializer_list<Complex> amplitudes)
    : FactorVector(ComplexVector(Eigen::Map<const ComplexVector>(
          amplitudes.begin(), static_cast<Eigen::Index>(amplitudes.size())))) {}

FactorVector FactorVector::basis(int dim, int k) {
    if (dim < 1 || k < 0 || k >= dim) {
        throw Error(ErrorCode::kIndexOutOfRange, "basis index out of range",
                    "dim=" + std::to_string(dim) + " k=" + std::to_string(k));
    }
    ComplexVector v = ComplexVector::Zero(dim);
    v[k] = 1.0;
    return FactorVector(std::move(v));
}

double FactorVector::norm() const { return std::sqrt(squared_norm_); }

bool FactorVector::is_unit() const { return std::abs(squared_norm_ - 1.0) <= kUnitTolerance; }

FactorVector FactorVector::scaled(Complex factor) const { return FactorVector(amplitudes_ * factor); }

bool FactorVector::operator==(const FactorVector &other) const {
    return dim() == other.dim() && amplitudes_ == other.amplitudes_;
}

Complex inner(const FactorVector &bra, const FactorVector &ket) {
    if (bra.dim() != ket.dim()) {
        throw Error(ErrorCode::kShapeMismatch, "factor dimensions differ",
                    std::to_string(bra.dim()) + " vs " + std::to_string(ket.dim()));
    }
    Complex sum = 0.0;
    for (int k = 0; k < bra.dim(); ++k) sum += std::conj(bra[k]) * ket[k];
    return sum;
}

namespace spin {
FactorVector up() { return FactorVector{1.0, 0.0}; }
FactorVector down() { return FactorVector{0.0, 1.0}; }
FactorVector plus() { return FactorVector{M_SQRT1_2, M_SQRT1_2}; }
FactorVector minus() { return FactorVector{M_SQRT1_2, -M_SQRT1_2}; }
FactorVector rotated(double theta) { return FactorVector{std::cos(theta / 2), std::sin(theta / 2)}; }
}  // namespace spin

// ---------------------------------------------------------------------------
// DeviationLaw

DeviationLaw DeviationLaw::eventually_constant(double amplitude, Index onset) {
    if (!std::isfinite(amplitude) || onset < 1) {
        throw Error(ErrorCode::kInvalidArgument, "eventually-constant law needs finite amplitude and onset >= 1");
    }
    DeviationLaw law;
    law.cls_ = DeviationClass::kEventuallyConstant;
    law.amplitude_ = amplitude;
    law.onset_ = onset;
    return law;
}

DeviationLaw DeviationLaw::geometric(double amplitude, double ratio) {
    if (!std::isfinite(amplitude) || !(ratio > 0.0 && ratio < 1.0)) {
        throw Error(ErrorCode::kInvalidArgument, "geometric law needs 0 < ratio < 1",
                    "ratio=" + std::to_string(ratio));
    }
    DeviationLaw law;
    law.cls_ = DeviationClass::kGeometric;
    law.amplitude_ = amplitude;
    law.ratio_ = ratio;
    return law;
}

DeviationLaw DeviationLaw::p_series(double amplitude, double exponent) {
    if (!std::isfinite(amplitude) || !(exponent > 0.0) || !std::isfinite(exponent)) {
        throw Error(ErrorCode::kInvalidArgument, "p-series law needs exponent > 0",
                    "p=" + std::to_string(exponent));
    }
    DeviationLaw law;
    law.cls_ = DeviationClass::kPSeries;
    law.amplitude_ = amplitude;
    law.exponent_ = exponent;
    return law;
}

DeviationLaw DeviationLaw::custom_certified(std::function<double(Index)> fn, bool certified_summable) {
    if (!fn) throw Error(ErrorCode::kUndeclaredTailClass, "custom law needs a callback");
    DeviationLaw law;
    law.cls_ = DeviationClass::kCustomCertified;
    law.custom_ = std::move(fn);
    law.certified_summable_ = certified_summable;
    return law;
}

double DeviationLaw::operator()(Index n) const {
    switch (cls_) {
        case DeviationClass::kEventuallyConstant: return n < onset_ ? amplitude_ : 0.0;
        case DeviationClass::kGeometric: return amplitude_ * std::pow(ratio_, static_cast<double>(n));
        case DeviationClass::kPSeries: return amplitude_ * std::pow(static_cast<double>(n), -exponent_);
        case DeviationClass::kCustomCertified: return custom_(n);
    }
    return 0.0;
}

bool DeviationLaw::summable() const {
    switch (cls_) {
        case DeviationClass::kEventuallyConstant:
        case DeviationClass::kGeometric: return true;
        case DeviationClass::kPSeries: return exponent_ > 1.0 || amplitude_ == 0.0;
        case DeviationClass::kCustomCertified: return certified_summable_;
    }
    return false;
}

bool DeviationLaw::same_law(const DeviationLaw &other) const {
    if (cls_ != other.cls_ || cls_ == DeviationClass::kCustomCertified) return false;
    return amplitude_ == other.amplitude_ && ratio_ == other.ratio_ && exponent_ == other.exponent_ &&
           onset_ == other.onset_;
}

std::string_view deviation_class_name(DeviationClass cls) {
    switch (cls) {
        case DeviationClass::kEventuallyConstant: return "eventually-constant";
        case DeviationClass::kGeometric: return "geometric";
        case DeviationClass::kPSeries: return "p-series";
        case DeviationClass::kCustomCertified: return "custom-certified";
    }
    return "unknown";
}

// ---------------------------------------------------------------------------
// ParametricFamily

namespace {

FactorVector default_partner(const FactorVector &base) {
    if (base.dim() == 1) return base;
    // Gram-Schmidt on the basis vector least aligned with base.
    int best = 0;
    for (int k = 1; k < base.dim(); ++k) {
        if (std::abs(base[k]) < std::abs(base[best])) best = k;
    }
    ComplexVector e = ComplexVector::Zero(base.dim());
    e[best] = 1.0;
    ComplexVector v = e - base.amplitudes() * base.amplitudes().dot(e);
    return FactorVector(v / v.norm());
}

}  // namespace

ParametricFamily::ParametricFamily(FamilyMode mode, FactorVector base, DeviationLaw law,
                                   std::optional<FactorVector> partner, Index shift)
    : mode_(mode),
      base_(std::move(base)),
      partner_(partner ? std::move(*partner) : default_partner(base_)),
      law_(std::move(law)),
      shift_(shift) {
    if (!base_.is_unit()) {
        throw Error(ErrorCode::kInvalidAmplitude, "parametric family base must be unit-norm");
    }
    if (mode_ == FamilyMode::kRotation) {
        if (base_.dim() < 2) {
            throw Error(ErrorCode::kShapeMismatch, "rotation family needs dimension >= 2");
        }
        if (partner_.dim() != base_.dim()) {
            throw Error(ErrorCode::kShapeMismatch, "partner dimension differs from base");
        }
        if (!partner_.is_unit() || std::abs(inner(base_, partner_)) > kUnitTolerance) {
            throw Error(ErrorCode::kInvalidAmplitude, "partner must be unit-norm and orthogonal to base");
        }
        if (law_.cls() != DeviationClass::kCustomCertified &&
            !(law_.amplitude() >= 0.0 && law_.amplitude() <= 1.0)) {
            throw Error(ErrorCode::kInvalidAmplitude, "rotation deviation amplitude must lie in [0, 1]");
        }
    } else if (law_.cls() != DeviationClass::kCustomCertified && !(law_.amplitude() > -1.0)) {
        throw Error(ErrorCode::kInvalidAmplitude, "scaling deviation amplitude must exceed -1");
    }
}

FactorVector ParametricFamily::factor(Index n) const {
    const double d = deviation(n);
    if (mode_ == FamilyMode::kScaling) {
        if (!(d > -1.0) || !std::isfinite(d)) {
            throw Error(ErrorCode::kInvalidAmplitude, "scaling deviation out of range", "n=" + std::to_string(n));
        }
        return FactorVector(base_.amplitudes() * (1.0 + d));
    }
    if (!(d >= 0.0 && d <= 1.0)) {
        throw Error(ErrorCode::kInvalidAmplitude, "rotation deviation out of [0, 1]", "n=" + std::to_string(n));
    }
    const double s = std::sqrt(std::max(0.0, d * (2.0 - d)));
    return FactorVector(base_.amplitudes() * (1.0 - d) + partner_.amplitudes() * s);
}

double ParametricFamily::overlap_with_base(Index n) const {
    const double d = deviation(n);
    return mode_ == FamilyMode::kScaling ? 1.0 + d : 1.0 - d;
}

double ParametricFamily::distance_from_base(Index n) const {
    const double d = deviation(n);
    return mode_ == FamilyMode::kScaling ? std::abs(d) : std::sqrt(std::max(0.0, 2.0 * d));
}

ParametricFamily ParametricFamily::shifted(Index k) const {
    return ParametricFamily(mode_, base_, law_, partner_, shift_ + k);
}

ParametricFamily ParametricFamily::transformed(const ComplexMatrix &unitary) const {
    return ParametricFamily(mode_, FactorVector(unitary * base_.amplitudes()), law_,
                            FactorVector(unitary * partner_.amplitudes()), shift_);
}

bool ParametricFamily::same_family(const ParametricFamily &other) const {
    return mode_ == other.mode_ && shift_ == other.shift_ && base_ == other.base_ &&
           (mode_ == FamilyMode::kScaling || partner_ == other.partner_) && law_.same_law(other.law_);
}

int tail_dim(const TailRule &tail) {
    return std::visit(
        [](const auto &t) -> int {
            if constexpr (std::is_same_v<std::decay_t<decltype(t)>, ConstantFactor>) {
                return t.vector.dim();
            } else {
                return t.dim();
            }
        },
        tail);
}

const FactorVector &tail_limit(const TailRule &tail) {
    if (const auto *c = std::get_if<ConstantFactor>(&tail)) return c->vector;
    return std::get<ParametricFamily>(tail).base();
}

// ---------------------------------------------------------------------------
// ProductState

ProductState::ProductState(std::vector<FactorVector> prefix, TailRule tail, std::string label)
    : prefix_(std::move(prefix)), tail_(std::move(tail)), label_(std::move(label)) {}

int ProductState::dim_at(Index n) const {
    if (n < 1) throw Error(ErrorCode::kIndexOutOfRange, "factor indices start at 1");
    return n <= prefix_length() ? prefix_[static_cast<std::size_t>(n - 1)].dim() : tail_dim();
}

FactorVector ProductState::factor(Index n) const {
    if (const FactorVector *stored = stored_factor(n)) return *stored;
    return std::get<ParametricFamily>(tail_).factor(n);
}

const FactorVector *ProductState::stored_factor(Index n) const {
    if (n < 1) throw Error(ErrorCode::kIndexOutOfRange, "factor indices start at 1");
    if (n <= prefix_length()) return &prefix_[static_cast<std::size_t>(n - 1)];
    if (const auto *c = std::get_if<ConstantFactor>(&tail_)) return &c->vector;
    return nullptr;
}

ProductState ProductState::with_label(std::string label) const {
    return ProductState(prefix_, tail_, std::move(label));
}

ProductState make_product_state(std::vector<FactorVector> prefix, TailRule tail, std::string label) {
    // Mixed dimensions are allowed position by position; the tail just has to be well formed.
    if (tail_dim(tail) < 1) throw Error(ErrorCode::kShapeMismatch, "tail dimension must be >= 1");
    return ProductState(std::move(prefix), std::move(tail), std::move(label));
}

ProductState constant_state(const FactorVector &v, std::string label) {
    return ProductState({}, ConstantFactor{v}, std::move(label));
}

bool same_shape(const ProductState &a, const ProductState &b) {
    const Index span = std::max(a.prefix_length(), b.prefix_length());
    for (Index n = 1; n <= span; ++n) {
        if (a.dim_at(n) != b.dim_at(n)) return false;
    }
    return a.tail_dim() == b.tail_dim();
}

void require_same_shape(const ProductState &a, const ProductState &b) {
    if (!same_shape(a, b)) {
        throw Error(ErrorCode::kShapeMismatch, "product states index factor spaces of different dimensions",
                    "'" + a.label() + "' vs '" + b.label() + "'");
    }
}

// ---------------------------------------------------------------------------
// CompositeState

CompositeState::CompositeState(std::vector<CompositeTerm> terms) : terms_(std::move(terms)) {
    if (terms_.empty()) throw Error(ErrorCode::kInvalidArgument, "composite state needs at least one term");
    for (const auto &term : terms_) {
        if (!std::isfinite(term.coefficient.real()) || !std::isfinite(term.coefficient.imag())) {
            throw Error(ErrorCode::kInvalidAmplitude, "non-finite composite coefficient");
        }
        require_same_shape(terms_.front().state, term.state);
    }
}

CompositeState CompositeState::single(ProductState state, Complex coefficient) {
    return CompositeState({CompositeTerm{coefficient, std::move(state)}});
}

void require_same_shape(const CompositeState &a, const CompositeState &b) {
    require_same_shape(a.front(), b.front());
}

double distance(const CompositeState &a, const CompositeState &b, Index truncation) {
    require_same_shape(a, b);
    // Written symmetrically in (a, b) so that distance(a, b) == distance(b, a) bit for bit.
    const double aa = composite_overlap(a, a, truncation).real();
    const double bb = composite_overlap(b, b, truncation).real();
    const double cross = composite_overlap(a, b, truncation).real() + composite_overlap(b, a, truncation).real();
    return std::max(0.0, (aa + bb) - cross);
}

}  // namespace sectorsim
