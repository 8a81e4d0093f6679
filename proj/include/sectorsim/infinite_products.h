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
 * Convergence classification of infinite products of complex numbers,
 * including quasi-convergence (modulus converges, argument does not, value
 * set to 0 by convention).
 */

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sectorsim/core_model.h"

namespace sectorsim {

enum class ProductTailClass {
    /// z_n == 1 from some index on.
    kEventuallyOne,
    /// |z_n - 1| <= C r^n with 0 < r < 1 (parameter r).
    kGeometricModulus,
    /// log z_n ~ C n^-p (parameter p).
    kPSeriesLogModulus,
    /// arguments are bounded per term but their sum diverges; modulus tested numerically.
    kBoundedNonsummableArgument,
    /// no structural claim; numeric verdict only.
    kCustom,
};

std::string_view product_tail_class_name(ProductTailClass cls);

struct ConstantValue {
    Complex value;
};

/// Tail z_n = term(n) for n > prefix length, with a declared convergence class.
class ClosedForm {
   public:
    /// Throws UndeclaredTailClass when cls is empty or the term callback is missing.
    ClosedForm(std::function<Complex(Index)> term, std::optional<ProductTailClass> cls, double parameter = 0.0,
               std::string name = {});

    Complex operator()(Index n) const { return term_(n); }
    ProductTailClass cls() const { return cls_; }
    double parameter() const { return parameter_; }
    const std::string &name() const { return name_; }

   private:
    std::function<Complex(Index)> term_;
    ProductTailClass cls_;
    double parameter_;
    std::string name_;
};

using SequenceTail = std::variant<ConstantValue, ClosedForm>;

/// z_1..z_P explicit, then the tail from index P+1 on.
class ComplexSequenceSpec {
   public:
    ComplexSequenceSpec(std::vector<Complex> prefix, SequenceTail tail);

    const std::vector<Complex> &prefix() const { return prefix_; }
    Index prefix_length() const { return static_cast<Index>(prefix_.size()); }
    const SequenceTail &tail() const { return tail_; }
    Complex term(Index n) const;

   private:
    std::vector<Complex> prefix_;
    SequenceTail tail_;
};

/// Sequence of moduli |z_n| with the class tag carried over where it still holds.
ComplexSequenceSpec modulus_sequence(const ComplexSequenceSpec &spec);

enum class ConvergenceKind { kConvergesTo, kQuasiConvergesToZero, kDiverges, kInconclusive };

std::string_view convergence_kind_name(ConvergenceKind kind);

struct ConvergenceDiagnostics {
    std::vector<std::pair<Index, Complex>> partial_products;
    /// sum of log|z_n| over the examined terms (-inf after an exact zero).
    double log_modulus_sum = 0.0;
    /// change of the argument partial sum over the last half of the examined terms.
    double argument_drift = 0.0;
    Index terms_examined = 0;
    /// true when the verdict follows from the declared tail class rather than numerics.
    bool exact = false;
    std::string method;
    /// error estimate on the reported value, when one is available.
    double error_estimate = 0.0;
};

struct ConvergenceVerdict {
    ConvergenceKind kind = ConvergenceKind::kInconclusive;
    /// Z for kConvergesTo; 0 otherwise.
    Complex value = 0.0;
    ConvergenceDiagnostics diagnostics;
};

struct ClassifyOptions {
    Index budget = 100000;
    double tol = 1e-10;
    /// Refuse numeric-only verdicts (custom tails raise UndeclaredTailClass).
    bool require_exact = false;
};

ConvergenceVerdict classify_product(const ComplexSequenceSpec &spec, const ClassifyOptions &options = {});

/// Z for a convergent product, exactly 0 for a quasi-convergent one.
Complex quasi_convergence_value(const ComplexSequenceSpec &spec, const ClassifyOptions &options = {});

}  // namespace sectorsim
