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

#include <gtest/gtest.h>

#include <cmath>

#include "sectorsim/errors.h"
#include "sectorsim/infinite_products.h"

namespace sectorsim {
namespace {

// Reference values computed offline to 30 digits.
constexpr double kSinhPiOverPi = 3.67607791037497772;          // prod (1 + 1/n^2)
constexpr double kOnePlusInverseCube = 2.428189792098870;      // prod (1 + 1/n^3)
constexpr double kOnePlusHalfPower = 2.384231029031372;        // prod (1 + 2^-n)

ComplexSequenceSpec constant(Complex z, std::vector<Complex> prefix = {}) {
    return ComplexSequenceSpec(std::move(prefix), ConstantValue{z});
}

ComplexSequenceSpec one_plus_power(double p, ProductTailClass cls = ProductTailClass::kPSeriesLogModulus) {
    return ComplexSequenceSpec({}, ClosedForm([p](Index n) { return Complex(1.0 + std::pow(double(n), -p)); }, cls, p));
}

ComplexSequenceSpec harmonic_phase() {
    return ComplexSequenceSpec(
        {}, ClosedForm([](Index n) { return std::polar(1.0, 1.0 / double(n)); },
                       ProductTailClass::kBoundedNonsummableArgument));
}

TEST(ClassifyProductTest, ConstantOne) {
    const auto v = classify_product(constant(1.0));
    EXPECT_EQ(v.kind, ConvergenceKind::kConvergesTo);
    EXPECT_EQ(v.value, Complex(1.0));
    EXPECT_TRUE(v.diagnostics.exact);
}

TEST(ClassifyProductTest, ConstantHalfGoesToZero) {
    const auto v = classify_product(constant(0.5));
    EXPECT_EQ(v.kind, ConvergenceKind::kConvergesTo);
    EXPECT_EQ(v.value, Complex(0.0));
    // Partial products follow 2^-N until they underflow.
    for (const auto &[n, z] : v.diagnostics.partial_products) {
        if (n > 1000) break;
        EXPECT_NEAR(std::log2(std::abs(z)), -double(n), 1e-9);
    }
}

TEST(ClassifyProductTest, ConstantUnitPhaseIsQuasi) {
    EXPECT_EQ(classify_product(constant(std::polar(1.0, 0.3))).kind, ConvergenceKind::kQuasiConvergesToZero);
}

TEST(ClassifyProductTest, ConstantAboveOneDiverges) {
    EXPECT_EQ(classify_product(constant(1.01)).kind, ConvergenceKind::kDiverges);
}

TEST(ClassifyProductTest, HarmonicPhaseIsQuasi) {
    const auto v = classify_product(harmonic_phase());
    EXPECT_EQ(v.kind, ConvergenceKind::kQuasiConvergesToZero);
    EXPECT_EQ(v.value, Complex(0.0));
    EXPECT_NEAR(v.diagnostics.log_modulus_sum, 0.0, 1e-9);
}

TEST(ClassifyProductTest, InverseSquaresGiveSinhPiOverPi) {
    const auto v = classify_product(one_plus_power(2.0));
    ASSERT_EQ(v.kind, ConvergenceKind::kConvergesTo);
    EXPECT_NEAR(v.value.real(), kSinhPiOverPi, 1e-6);
    EXPECT_NEAR(v.value.imag(), 0.0, 1e-12);
}

TEST(ClassifyProductTest, InverseCubes) {
    const auto v = classify_product(one_plus_power(3.0));
    ASSERT_EQ(v.kind, ConvergenceKind::kConvergesTo);
    EXPECT_NEAR(v.value.real(), kOnePlusInverseCube, 1e-8);
}

TEST(ClassifyProductTest, GeometricModulus) {
    const ComplexSequenceSpec spec(
        {}, ClosedForm([](Index n) { return Complex(1.0 + std::ldexp(1.0, -int(n))); },
                       ProductTailClass::kGeometricModulus, 0.5));
    const auto v = classify_product(spec);
    ASSERT_EQ(v.kind, ConvergenceKind::kConvergesTo);
    EXPECT_NEAR(v.value.real(), kOnePlusHalfPower, 1e-10);
}

TEST(ClassifyProductTest, HarmonicGrowthDiverges) {
    // prod (1 + 1/n) = N + 1.
    EXPECT_EQ(classify_product(one_plus_power(1.0)).kind, ConvergenceKind::kDiverges);
    const ComplexSequenceSpec shrinking(
        {}, ClosedForm([](Index n) { return Complex(1.0 - 0.5 / double(n)); }, ProductTailClass::kPSeriesLogModulus,
                       1.0));
    const auto v = classify_product(shrinking);
    EXPECT_EQ(v.kind, ConvergenceKind::kConvergesTo);
    EXPECT_EQ(v.value, Complex(0.0));
}

TEST(ClassifyProductTest, ZeroFactorShortCircuits) {
    const auto v = classify_product(constant(2.0, {1.0, 0.0, 5.0}));
    EXPECT_EQ(v.kind, ConvergenceKind::kConvergesTo);
    EXPECT_EQ(v.value, Complex(0.0));
    EXPECT_EQ(v.diagnostics.method, "zero-factor");
}

TEST(ClassifyProductTest, EventuallyOne) {
    const ComplexSequenceSpec spec({2.0}, ClosedForm([](Index n) { return n <= 4 ? Complex(0.0, 1.0) : Complex(1.0); },
                                                     ProductTailClass::kEventuallyOne));
    const auto v = classify_product(spec, {.budget = 100});
    ASSERT_EQ(v.kind, ConvergenceKind::kConvergesTo);
    // 2 * i^3
    EXPECT_NEAR(std::abs(v.value - Complex(0.0, -2.0)), 0.0, 1e-15);
}

TEST(ClassifyProductTest, CustomTailNumericPath) {
    const ComplexSequenceSpec geometric(
        {}, ClosedForm([](Index n) { return Complex(1.0 + std::ldexp(1.0, -int(std::min<Index>(n, 1000)))); },
                       ProductTailClass::kCustom));
    const auto v = classify_product(geometric);
    ASSERT_EQ(v.kind, ConvergenceKind::kConvergesTo);
    EXPECT_FALSE(v.diagnostics.exact);
    EXPECT_NEAR(v.value.real(), kOnePlusHalfPower, 1e-10);

    // 1 + 1/n^2 moves by ~1e-5 over the budget: not settled within tol.
    EXPECT_EQ(classify_product(one_plus_power(2.0, ProductTailClass::kCustom)).kind, ConvergenceKind::kInconclusive);
}

TEST(ClassifyProductTest, CustomTailRefusedWhenExactRequired) {
    try {
        classify_product(one_plus_power(2.0, ProductTailClass::kCustom), {.require_exact = true});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kUndeclaredTailClass);
    }
}

TEST(ClassifyProductTest, ClosedFormNeedsClass) {
    try {
        ClosedForm([](Index) { return Complex(1.0); }, std::nullopt);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kUndeclaredTailClass);
    }
}

TEST(ClassifyProductTest, RejectsBadOptions) {
    EXPECT_THROW(classify_product(constant(1.0), {.tol = 0.0}), Error);
    EXPECT_THROW(classify_product(constant(1.0, {1.0, 1.0, 1.0}), {.budget = 2}), Error);
}

TEST(QuasiValueTest, Examples) {
    EXPECT_EQ(quasi_convergence_value(constant(1.0, {2.0, 3.0})), Complex(6.0));
    EXPECT_EQ(quasi_convergence_value(harmonic_phase()), Complex(0.0));
    EXPECT_EQ(quasi_convergence_value(constant(0.5)), Complex(0.0));
    try {
        quasi_convergence_value(constant(1.01));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kNotQuasiConvergent);
    }
}

TEST(ClassifyPropertyTest, ValueIsStableUnderLargerBudget) {
    for (double p : {2.0, 3.0, 1.5}) {
        const auto a = classify_product(one_plus_power(p), {.budget = 100000, .tol = 1e-10});
        const auto b = classify_product(one_plus_power(p), {.budget = 400000, .tol = 1e-12});
        ASSERT_EQ(a.kind, ConvergenceKind::kConvergesTo);
        ASSERT_EQ(b.kind, ConvergenceKind::kConvergesTo);
        EXPECT_NEAR(std::abs(a.value - b.value), 0.0, 1e-7) << "p=" << p;
    }
}

TEST(ClassifyPropertyTest, ModulusDecomposition) {
    const std::vector<ComplexSequenceSpec> suite = {
        constant(1.0),           constant(0.5),         constant(std::polar(1.0, 0.3)),
        constant(1.01),          harmonic_phase(),      one_plus_power(2.0),
        one_plus_power(1.0),     constant(std::polar(0.9, 1.0), {Complex(0.0, 2.0)}),
    };
    for (const auto &spec : suite) {
        const auto kind = classify_product(spec).kind;
        const bool converges = kind == ConvergenceKind::kConvergesTo || kind == ConvergenceKind::kQuasiConvergesToZero;
        const auto mod_kind = classify_product(modulus_sequence(spec)).kind;
        EXPECT_EQ(converges, mod_kind == ConvergenceKind::kConvergesTo);
    }
}

TEST(ClassifyPropertyTest, LogSumAgreement) {
    // Positive-real tails converge to a nonzero value exactly when sum log z_n converges.
    for (double p : {0.5, 1.0, 1.5, 2.0, 4.0}) {
        const auto v = classify_product(one_plus_power(p));
        const bool nonzero_limit = v.kind == ConvergenceKind::kConvergesTo && v.value != Complex(0.0);
        EXPECT_EQ(nonzero_limit, p > 1.0) << "p=" << p;
    }
    for (double r : {0.1, 0.5, 0.9}) {
        const ComplexSequenceSpec spec(
            {}, ClosedForm([r](Index n) { return Complex(1.0 - 0.5 * std::pow(r, double(n))); },
                           ProductTailClass::kGeometricModulus, r));
        const auto v = classify_product(spec);
        EXPECT_EQ(v.kind, ConvergenceKind::kConvergesTo);
        EXPECT_GT(v.value.real(), 0.0);
    }
}

}  // namespace
}  // namespace sectorsim
