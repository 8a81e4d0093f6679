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

#include "sectorsim/overlaps.h"

#include <algorithm>
#include <cmath>

#include "sectorsim/errors.h"
#include "sectorsim/sectors.h"

namespace sectorsim {

Complex factor_overlap(const ProductState &a, const ProductState &b, Index n) {
    const FactorVector *fa = a.stored_factor(n);
    const FactorVector *fb = b.stored_factor(n);
    if (fa && fb) return inner(*fa, *fb);
    if (fa) return inner(*fa, b.factor(n));
    if (fb) return inner(a.factor(n), *fb);
    return inner(a.factor(n), b.factor(n));
}

namespace {

void require_truncation(Index truncation) {
    if (truncation < 1) {
        throw Error(ErrorCode::kInvalidArgument, "truncation must be >= 1", "N=" + std::to_string(truncation));
    }
}

ProductAccumulator accumulate(const ProductState &a, const ProductState &b, Index truncation) {
    require_same_shape(a, b);
    require_truncation(truncation);
    ProductAccumulator acc;
    for (Index n = 1; n <= truncation && !acc.is_zero(); ++n) acc.multiply(factor_overlap(a, b, n));
    return acc;
}

}  // namespace

Complex truncated_overlap(const ProductState &a, const ProductState &b, Index truncation) {
    return accumulate(a, b, truncation).value();
}

LogComplex truncated_overlap_log(const ProductState &a, const ProductState &b, Index truncation) {
    return accumulate(a, b, truncation).log_value();
}

LogComplex composite_overlap_log(const CompositeState &a, const CompositeState &b, Index truncation) {
    require_same_shape(a, b);
    std::vector<LogComplex> terms;
    terms.reserve(a.size() * b.size());
    for (const auto &ta : a.terms()) {
        for (const auto &tb : b.terms()) {
            const Complex coeff = std::conj(ta.coefficient) * tb.coefficient;
            if (coeff == Complex(0.0)) continue;
            LogComplex elem = truncated_overlap_log(ta.state, tb.state, truncation);
            if (elem.is_zero()) continue;
            const LogComplex lc = LogComplex::from(coeff);
            terms.push_back({elem.log_modulus + lc.log_modulus, elem.phase + lc.phase});
        }
    }
    return log_sum(terms);
}

Complex composite_overlap(const CompositeState &a, const CompositeState &b, Index truncation) {
    require_same_shape(a, b);
    require_truncation(truncation);
    if (truncation > ProductAccumulator::kDirectLimit) return composite_overlap_log(a, b, truncation).value();
    Complex sum = 0.0;
    for (const auto &ta : a.terms()) {
        for (const auto &tb : b.terms()) {
            sum += std::conj(ta.coefficient) * tb.coefficient * truncated_overlap(ta.state, tb.state, truncation);
        }
    }
    return sum;
}

std::optional<Index> OverlapSweep::first_below(double eps) const {
    if (!(eps > 0.0)) throw Error(ErrorCode::kInvalidArgument, "eps must be positive");
    const double log_eps = std::log(eps);
    for (std::size_t k = 0; k < truncations.size(); ++k) {
        if (log_modulus[k] < log_eps) return truncations[k];
    }
    return std::nullopt;
}

std::vector<Index> truncation_range(Index n_max) {
    require_truncation(n_max);
    std::vector<Index> out(static_cast<std::size_t>(n_max));
    for (Index n = 1; n <= n_max; ++n) out[static_cast<std::size_t>(n - 1)] = n;
    return out;
}

OverlapSweep overlap_sweep(const ProductState &a, const ProductState &b, const std::vector<Index> &truncations) {
    require_same_shape(a, b);
    for (std::size_t k = 0; k < truncations.size(); ++k) {
        require_truncation(truncations[k]);
        if (k > 0 && truncations[k] <= truncations[k - 1]) {
            throw Error(ErrorCode::kInvalidArgument, "truncations must be strictly increasing");
        }
    }
    OverlapSweep sweep;
    sweep.truncations = truncations;
    ProductAccumulator acc;
    Index n = 0;
    for (Index target : truncations) {
        while (n < target) {
            ++n;
            acc.multiply(acc.is_zero() ? Complex(0.0) : factor_overlap(a, b, n));
        }
        sweep.values.push_back(acc.value());
        sweep.log_modulus.push_back(acc.log_value().log_modulus);
    }
    return sweep;
}

namespace {

struct TailShape {
    bool all_constant = true;
    std::optional<double> min_p;
    std::optional<double> max_ratio;
    bool has_custom = false;
    Index settles_after = 0;  // every eventually-constant law is exact from here on
};

void inspect_tail(const ProductState &s, TailShape &shape) {
    const auto *family = std::get_if<ParametricFamily>(&s.tail());
    if (!family) return;
    const DeviationLaw &law = family->law();
    switch (law.cls()) {
        case DeviationClass::kEventuallyConstant:
            shape.settles_after = std::max(shape.settles_after, law.onset() - 1 + family->shift());
            break;
        case DeviationClass::kGeometric:
            shape.all_constant = false;
            shape.max_ratio = std::max(shape.max_ratio.value_or(0.0), law.ratio());
            break;
        case DeviationClass::kPSeries:
            shape.all_constant = false;
            shape.min_p = std::min(shape.min_p.value_or(law.exponent()), law.exponent());
            break;
        case DeviationClass::kCustomCertified:
            shape.all_constant = false;
            shape.has_custom = true;
            break;
    }
}

}  // namespace

Complex asymptotic_overlap(const ProductState &a, const ProductState &b, const ClassifyOptions &options) {
    const SectorVerdict verdict = same_sector(a, b);
    if (verdict.kind == SectorKind::kDifferentSector) return 0.0;
    if (verdict.kind == SectorKind::kInconclusive) {
        throw Error(ErrorCode::kInconclusiveSector, "sector verdict is inconclusive", verdict.certificate.note);
    }

    TailShape shape;
    inspect_tail(a, shape);
    inspect_tail(b, shape);
    const Index explicit_span = std::max({a.prefix_length(), b.prefix_length(), shape.settles_after});
    std::vector<Complex> prefix;
    prefix.reserve(static_cast<std::size_t>(explicit_span));
    for (Index n = 1; n <= explicit_span; ++n) prefix.push_back(factor_overlap(a, b, n));

    if (shape.all_constant) {
        // Same sector with settled tails: the limit per-term overlap is one within kUnitTolerance.
        const ComplexSequenceSpec spec(std::move(prefix), ConstantValue{1.0});
        return quasi_convergence_value(spec, options);
    }
    ProductTailClass cls = ProductTailClass::kCustom;
    double parameter = 0.0;
    if (shape.has_custom) {
        cls = ProductTailClass::kCustom;
    } else if (shape.min_p) {
        cls = ProductTailClass::kPSeriesLogModulus;
        parameter = *shape.min_p;
    } else if (shape.max_ratio) {
        cls = ProductTailClass::kGeometricModulus;
        parameter = *shape.max_ratio;
    }
    const ComplexSequenceSpec spec(std::move(prefix),
                                   ClosedForm([a, b](Index n) { return factor_overlap(a, b, n); }, cls, parameter,
                                              "per-factor overlap"));
    return quasi_convergence_value(spec, options);
}

}  // namespace sectorsim
