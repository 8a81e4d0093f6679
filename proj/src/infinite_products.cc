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

#include "sectorsim/infinite_products.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sectorsim/errors.h"
#include "sectorsim/log_product.h"

namespace sectorsim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kUnitModulusSlack = 4.0 * std::numeric_limits<double>::epsilon();
// A numeric tail is called quasi-convergent only if the argument partial sums
// move by more than this over the last half of the budget.
constexpr double kQuasiDriftThreshold = 4.0 * M_PI;

ConvergenceVerdict zero_factor_verdict(Index at, bool exact) {
    ConvergenceVerdict v;
    v.kind = ConvergenceKind::kConvergesTo;
    v.value = 0.0;
    v.diagnostics.log_modulus_sum = -kInf;
    v.diagnostics.terms_examined = at;
    v.diagnostics.exact = exact;
    v.diagnostics.method = "zero-factor";
    v.diagnostics.partial_products.emplace_back(at, 0.0);
    return v;
}

bool is_sample_point(Index n, Index prefix_length, Index budget) {
    if (n == budget || n == prefix_length + 1) return true;
    const Index offset = n - prefix_length;
    return offset > 0 && (offset & (offset - 1)) == 0;
}

/// Streaming pass over terms prefix_length+1..end of a closed-form tail.
struct TailScan {
    CompensatedSum log_modulus;
    CompensatedSum argument;
    double log_modulus_at_half = 0.0;
    double argument_at_half = 0.0;
    std::optional<Index> zero_at;
};

TailScan scan_tail(const ComplexSequenceSpec &spec, const ClosedForm &tail, Index budget, Complex prefix_product,
                   ConvergenceDiagnostics &diag) {
    TailScan scan;
    const LogComplex lp = LogComplex::from(prefix_product);
    scan.log_modulus.add(lp.log_modulus);
    scan.argument.add(lp.phase);
    const Index half = spec.prefix_length() + (budget - spec.prefix_length()) / 2;
    if (half == spec.prefix_length()) {
        scan.log_modulus_at_half = scan.log_modulus.value();
        scan.argument_at_half = scan.argument.value();
    }
    for (Index n = spec.prefix_length() + 1; n <= budget; ++n) {
        const Complex z = tail(n);
        if (z == Complex(0.0)) {
            scan.zero_at = n;
            return scan;
        }
        const LogComplex lz = log_of(z);
        scan.log_modulus.add(lz.log_modulus);
        scan.argument.add(lz.phase);
        if (n == half) {
            scan.log_modulus_at_half = scan.log_modulus.value();
            scan.argument_at_half = scan.argument.value();
        }
        if (is_sample_point(n, spec.prefix_length(), budget)) {
            diag.partial_products.emplace_back(
                n, LogComplex{scan.log_modulus.value(), scan.argument.value()}.value());
        }
    }
    diag.terms_examined = budget;
    diag.log_modulus_sum = scan.log_modulus.value();
    diag.argument_drift = scan.argument.value() - scan.argument_at_half;
    return scan;
}

/// Verdict from modulus behaviour alone, shared by the numeric paths.
/// Returns nullopt when the modulus product looks stable.
std::optional<ConvergenceKind> modulus_trend(const TailScan &scan, double tol) {
    const double full = scan.log_modulus.value();
    const double change = full - scan.log_modulus_at_half;
    if (std::abs(change) < tol) return std::nullopt;
    if (change < 0.0 && full < std::log(tol)) return ConvergenceKind::kConvergesTo;  // modulus -> 0
    if (change > 0.0 && full > -std::log(tol)) return ConvergenceKind::kDiverges;
    return ConvergenceKind::kInconclusive;
}

ConvergenceVerdict classify_constant_tail(const ComplexSequenceSpec &spec, Complex z, Complex prefix_product,
                                          const ClassifyOptions &options) {
    ConvergenceVerdict v;
    auto &diag = v.diagnostics;
    diag.exact = true;
    diag.method = "constant-tail";
    diag.terms_examined = spec.prefix_length() + 1;
    if (z == Complex(0.0)) return zero_factor_verdict(spec.prefix_length() + 1, true);

    const double m = std::abs(z);
    const LogComplex lp = LogComplex::from(prefix_product);
    const Index tail_terms = options.budget - spec.prefix_length();
    diag.log_modulus_sum = lp.log_modulus + static_cast<double>(tail_terms) * std::log(m);
    diag.argument_drift = static_cast<double>(tail_terms - tail_terms / 2) * std::arg(z);
    for (Index k = 0; spec.prefix_length() + k <= options.budget; k = (k == 0 ? 1 : 2 * k)) {
        const LogComplex partial{lp.log_modulus + static_cast<double>(k) * std::log(m),
                                 lp.phase + static_cast<double>(k) * std::arg(z)};
        diag.partial_products.emplace_back(spec.prefix_length() + k, partial.value());
    }

    if (std::abs(z - 1.0) <= kUnitModulusSlack) {
        v.kind = ConvergenceKind::kConvergesTo;
        v.value = prefix_product;
    } else if (std::abs(m - 1.0) <= kUnitModulusSlack) {
        v.kind = ConvergenceKind::kQuasiConvergesToZero;
    } else if (m < 1.0) {
        v.kind = ConvergenceKind::kConvergesTo;
        v.value = 0.0;
    } else {
        v.kind = ConvergenceKind::kDiverges;
    }
    return v;
}

ConvergenceVerdict classify_eventually_one(const ComplexSequenceSpec &spec, const ClosedForm &tail,
                                           Complex prefix_product, const ClassifyOptions &options) {
    ConvergenceVerdict v;
    auto &diag = v.diagnostics;
    diag.method = "eventually-one";
    ProductAccumulator acc;
    acc.multiply(prefix_product);
    Index last_non_one = spec.prefix_length();
    for (Index n = spec.prefix_length() + 1; n <= options.budget; ++n) {
        const Complex z = tail(n);
        if (z == Complex(0.0)) return zero_factor_verdict(n, true);
        if (z != Complex(1.0)) {
            last_non_one = n;
            acc.multiply(z);
        }
        if (is_sample_point(n, spec.prefix_length(), options.budget)) {
            diag.partial_products.emplace_back(n, acc.value());
        }
    }
    diag.terms_examined = options.budget;
    diag.log_modulus_sum = acc.log_value().log_modulus;
    // The class claims the terms become exactly one; accept the claim only if
    // the whole second half of the examined range already shows it.
    if (last_non_one <= spec.prefix_length() + (options.budget - spec.prefix_length()) / 2) {
        v.kind = ConvergenceKind::kConvergesTo;
        v.value = acc.value();
        diag.exact = true;
    }
    return v;
}

ConvergenceVerdict classify_geometric(const ComplexSequenceSpec &spec, const ClosedForm &tail,
                                      Complex prefix_product, const ClassifyOptions &options) {
    const double r = tail.parameter();
    if (!(r > 0.0 && r < 1.0)) {
        throw Error(ErrorCode::kInvalidArgument, "geometric-modulus class needs 0 < ratio < 1",
                    "ratio=" + std::to_string(r));
    }
    ConvergenceVerdict v;
    auto &diag = v.diagnostics;
    diag.method = "geometric-modulus";
    diag.exact = true;
    ProductAccumulator acc;
    acc.multiply(prefix_product);
    double tail_bound = kInf;
    Index n = spec.prefix_length() + 1;
    for (; n <= options.budget; ++n) {
        const Complex z = tail(n);
        if (z == Complex(0.0)) return zero_factor_verdict(n, true);
        acc.multiply(z);
        if (is_sample_point(n, spec.prefix_length(), options.budget)) {
            diag.partial_products.emplace_back(n, acc.value());
        }
        const double dev = std::abs(z - 1.0);
        // sum_{m>n} |log z_m| <= 2 sum_{m>n} |z_m - 1| <= 2 dev r / (1 - r) once dev < 1/2.
        if (dev < 0.5) {
            tail_bound = 2.0 * dev * r / (1.0 - r);
            if (tail_bound * std::max(1.0, std::abs(acc.value())) < options.tol) break;
        }
    }
    diag.terms_examined = std::min(n, options.budget);
    diag.log_modulus_sum = acc.log_value().log_modulus;
    diag.error_estimate = std::isfinite(tail_bound) ? tail_bound * std::abs(acc.value()) : kInf;
    v.kind = ConvergenceKind::kConvergesTo;
    v.value = acc.value();
    return v;
}

/// Richardson-extrapolated log-sum for terms with log z_n ~ C n^-p, p > 1.
ConvergenceVerdict classify_p_series(const ComplexSequenceSpec &spec, const ClosedForm &tail,
                                     Complex prefix_product, const ClassifyOptions &options) {
    const double p = tail.parameter();
    if (!(p > 0.0)) {
        throw Error(ErrorCode::kInvalidArgument, "p-series class needs p > 0", "p=" + std::to_string(p));
    }
    ConvergenceVerdict v;
    auto &diag = v.diagnostics;
    diag.method = "p-series-log-modulus";
    const Index start = spec.prefix_length() + 1;
    if (options.budget < 4 * start) {
        throw Error(ErrorCode::kInvalidArgument, "p-series extrapolation needs budget >= 4 (prefix + 1)");
    }
    const Index quarter = options.budget / 4;
    const Index marks[3] = {quarter, 2 * quarter, 4 * quarter};
    const LogComplex lp = LogComplex::from(prefix_product);
    CompensatedSum re, im;
    re.add(lp.log_modulus);
    im.add(lp.phase);
    Complex sums[3];
    int next = 0;
    double last_re_term = 0.0, last_im_term = 0.0;
    for (Index n = start; n <= marks[2]; ++n) {
        const Complex z = tail(n);
        if (z == Complex(0.0)) return zero_factor_verdict(n, true);
        const LogComplex lz = log_of(z);
        re.add(lz.log_modulus);
        im.add(lz.phase);
        last_re_term = lz.log_modulus;
        last_im_term = lz.phase;
        if (is_sample_point(n, spec.prefix_length(), marks[2])) {
            diag.partial_products.emplace_back(n, LogComplex{re.value(), im.value()}.value());
        }
        while (next < 3 && n == marks[next]) sums[next++] = Complex(re.value(), im.value());
    }
    diag.terms_examined = marks[2];
    diag.log_modulus_sum = re.value();

    if (p <= 1.0) {
        // Non-summable: the sign of the log-modulus terms decides.
        diag.exact = true;
        if (last_re_term < 0.0) {
            v.kind = ConvergenceKind::kConvergesTo;
            v.value = 0.0;
        } else if (last_re_term > 0.0) {
            v.kind = ConvergenceKind::kDiverges;
        } else if (last_im_term != 0.0) {
            v.kind = ConvergenceKind::kQuasiConvergesToZero;
        } else {
            diag.exact = false;
        }
        return v;
    }

    diag.exact = true;
    const double f1 = std::pow(2.0, p - 1.0);
    const double f2 = std::pow(2.0, p);
    const Complex r1a = (f1 * sums[1] - sums[0]) / (f1 - 1.0);
    const Complex r1b = (f1 * sums[2] - sums[1]) / (f1 - 1.0);
    const Complex extrapolated = (f2 * r1b - r1a) / (f2 - 1.0);
    diag.error_estimate = std::abs(extrapolated - r1b);
    v.kind = ConvergenceKind::kConvergesTo;
    v.value = std::exp(extrapolated);
    return v;
}

ConvergenceVerdict classify_numeric(const ComplexSequenceSpec &spec, const ClosedForm &tail, Complex prefix_product,
                                    const ClassifyOptions &options, bool arguments_nonsummable) {
    ConvergenceVerdict v;
    auto &diag = v.diagnostics;
    diag.method = arguments_nonsummable ? "bounded-nonsummable-argument" : "numeric";
    const TailScan scan = scan_tail(spec, tail, options.budget, prefix_product, diag);
    if (scan.zero_at) return zero_factor_verdict(*scan.zero_at, arguments_nonsummable);

    if (auto trend = modulus_trend(scan, options.tol)) {
        v.kind = *trend;
        return v;
    }
    // Modulus product is stable.
    const double drift = std::abs(scan.argument.value() - scan.argument_at_half);
    if (arguments_nonsummable || drift > kQuasiDriftThreshold) {
        v.kind = ConvergenceKind::kQuasiConvergesToZero;
    } else if (drift < options.tol) {
        v.kind = ConvergenceKind::kConvergesTo;
        v.value = LogComplex{scan.log_modulus.value(), scan.argument.value()}.value();
    }
    return v;
}

}  // namespace

std::string_view product_tail_class_name(ProductTailClass cls) {
    switch (cls) {
        case ProductTailClass::kEventuallyOne: return "eventually-one";
        case ProductTailClass::kGeometricModulus: return "geometric-modulus";
        case ProductTailClass::kPSeriesLogModulus: return "p-series-log-modulus";
        case ProductTailClass::kBoundedNonsummableArgument: return "bounded-nonsummable-argument";
        case ProductTailClass::kCustom: return "custom";
    }
    return "unknown";
}

std::string_view convergence_kind_name(ConvergenceKind kind) {
    switch (kind) {
        case ConvergenceKind::kConvergesTo: return "ConvergesTo";
        case ConvergenceKind::kQuasiConvergesToZero: return "QuasiConvergesToZero";
        case ConvergenceKind::kDiverges: return "Diverges";
        case ConvergenceKind::kInconclusive: return "Inconclusive";
    }
    return "Unknown";
}

ClosedForm::ClosedForm(std::function<Complex(Index)> term, std::optional<ProductTailClass> cls, double parameter,
                       std::string name)
    : term_(std::move(term)), cls_(ProductTailClass::kCustom), parameter_(parameter), name_(std::move(name)) {
    if (!term_) throw Error(ErrorCode::kUndeclaredTailClass, "closed-form tail needs a term callback");
    if (!cls) throw Error(ErrorCode::kUndeclaredTailClass, "closed-form tail must declare its convergence class");
    cls_ = *cls;
}

ComplexSequenceSpec::ComplexSequenceSpec(std::vector<Complex> prefix, SequenceTail tail)
    : prefix_(std::move(prefix)), tail_(std::move(tail)) {
    for (std::size_t k = 0; k < prefix_.size(); ++k) {
        if (!std::isfinite(prefix_[k].real()) || !std::isfinite(prefix_[k].imag())) {
            throw Error(ErrorCode::kInvalidAmplitude, "non-finite sequence entry", "index " + std::to_string(k + 1));
        }
    }
    if (const auto *c = std::get_if<ConstantValue>(&tail_)) {
        if (!std::isfinite(c->value.real()) || !std::isfinite(c->value.imag())) {
            throw Error(ErrorCode::kInvalidAmplitude, "non-finite constant tail");
        }
    }
}

Complex ComplexSequenceSpec::term(Index n) const {
    if (n < 1) throw Error(ErrorCode::kIndexOutOfRange, "sequence indices start at 1");
    if (n <= prefix_length()) return prefix_[static_cast<std::size_t>(n - 1)];
    if (const auto *c = std::get_if<ConstantValue>(&tail_)) return c->value;
    return std::get<ClosedForm>(tail_)(n);
}

ComplexSequenceSpec modulus_sequence(const ComplexSequenceSpec &spec) {
    std::vector<Complex> prefix;
    prefix.reserve(spec.prefix().size());
    for (Complex z : spec.prefix()) prefix.emplace_back(std::abs(z));
    if (const auto *c = std::get_if<ConstantValue>(&spec.tail())) {
        return ComplexSequenceSpec(std::move(prefix), ConstantValue{std::abs(c->value)});
    }
    const ClosedForm &tail = std::get<ClosedForm>(spec.tail());
    ProductTailClass cls = tail.cls();
    // ||z|-1| <= |z-1| and log|z| = Re log z keep these classes; the argument class has no modulus claim.
    if (cls == ProductTailClass::kBoundedNonsummableArgument) cls = ProductTailClass::kCustom;
    return ComplexSequenceSpec(std::move(prefix),
                               ClosedForm([tail](Index n) { return Complex(std::abs(tail(n))); }, cls,
                                          tail.parameter(), "|" + tail.name() + "|"));
}

ConvergenceVerdict classify_product(const ComplexSequenceSpec &spec, const ClassifyOptions &options) {
    if (!(options.tol > 0.0)) throw Error(ErrorCode::kInvalidArgument, "tol must be positive");
    if (options.budget < spec.prefix_length() || options.budget < 1) {
        throw Error(ErrorCode::kInvalidArgument, "budget must cover the prefix",
                    "budget=" + std::to_string(options.budget));
    }

    ProductAccumulator prefix_acc;
    for (Index n = 1; n <= spec.prefix_length(); ++n) {
        const Complex z = spec.prefix()[static_cast<std::size_t>(n - 1)];
        if (z == Complex(0.0)) return zero_factor_verdict(n, true);
        prefix_acc.multiply(z);
    }
    const Complex prefix_product = prefix_acc.value();

    if (const auto *c = std::get_if<ConstantValue>(&spec.tail())) {
        return classify_constant_tail(spec, c->value, prefix_product, options);
    }
    const ClosedForm &tail = std::get<ClosedForm>(spec.tail());
    switch (tail.cls()) {
        case ProductTailClass::kEventuallyOne:
            return classify_eventually_one(spec, tail, prefix_product, options);
        case ProductTailClass::kGeometricModulus:
            return classify_geometric(spec, tail, prefix_product, options);
        case ProductTailClass::kPSeriesLogModulus:
            return classify_p_series(spec, tail, prefix_product, options);
        case ProductTailClass::kBoundedNonsummableArgument:
            return classify_numeric(spec, tail, prefix_product, options, true);
        case ProductTailClass::kCustom:
            if (options.require_exact) {
                throw Error(ErrorCode::kUndeclaredTailClass,
                            "custom tail has no declared class; an exact verdict is not available", tail.name());
            }
            return classify_numeric(spec, tail, prefix_product, options, false);
    }
    return {};
}

Complex quasi_convergence_value(const ComplexSequenceSpec &spec, const ClassifyOptions &options) {
    const ConvergenceVerdict v = classify_product(spec, options);
    switch (v.kind) {
        case ConvergenceKind::kConvergesTo: return v.value;
        case ConvergenceKind::kQuasiConvergesToZero: return 0.0;
        default:
            throw Error(ErrorCode::kNotQuasiConvergent, "product is not (quasi-)convergent",
                        std::string(convergence_kind_name(v.kind)));
    }
}

}  // namespace sectorsim
