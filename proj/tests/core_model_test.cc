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
#include <limits>

#include "sectorsim/core_model.h"
#include "sectorsim/errors.h"
#include "sectorsim/oracle.h"
#include "sectorsim/overlaps.h"
#include "test_support.h"

namespace sectorsim {
namespace {

template <class F>
ErrorCode code_of(F &&f) {
    try {
        f();
    } catch (const Error &e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an Error";
    return ErrorCode::kUsageError;
}

TEST(FactorVectorTest, RejectsEmptyAndNonFinite) {
    EXPECT_EQ(code_of([] { FactorVector(ComplexVector(0)); }), ErrorCode::kInvalidAmplitude);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    EXPECT_EQ(code_of([&] { FactorVector({1.0, Complex(nan, 0.0)}); }), ErrorCode::kInvalidAmplitude);
    EXPECT_EQ(code_of([] { FactorVector({Complex(std::numeric_limits<double>::infinity(), 0.0)}); }),
              ErrorCode::kInvalidAmplitude);
}

TEST(FactorVectorTest, SquaredNormIsCachedFromEntries) {
    const FactorVector v{Complex(3.0, 4.0), Complex(0.0, 12.0)};
    EXPECT_DOUBLE_EQ(v.squared_norm(), 169.0);
    EXPECT_DOUBLE_EQ(v.norm(), 13.0);
    EXPECT_FALSE(v.is_unit());
    EXPECT_TRUE(spin::plus().is_unit());
}

TEST(FactorVectorTest, InnerProductConjugatesTheBra) {
    const FactorVector a{Complex(0.0, 1.0), 0.0};
    const FactorVector b{1.0, 0.0};
    EXPECT_EQ(inner(a, b), Complex(0.0, -1.0));
    EXPECT_EQ(code_of([] { inner(FactorVector{1.0}, FactorVector{1.0, 0.0}); }), ErrorCode::kShapeMismatch);
}

TEST(FactorVectorTest, SpinVectors) {
    EXPECT_NEAR(inner(spin::up(), spin::plus()).real(), M_SQRT1_2, 1e-16);
    EXPECT_EQ(inner(spin::up(), spin::down()), Complex(0.0));
    EXPECT_EQ(inner(spin::plus(), spin::minus()), Complex(0.0));
    EXPECT_NEAR(inner(spin::up(), spin::rotated(M_PI / 2)).real(), std::cos(M_PI / 4), 1e-16);
}

TEST(ProductStateTest, AllUpChain) {
    const ProductState s = make_product_state({spin::up()}, ConstantFactor{spin::up()}, "all-up");
    EXPECT_EQ(s.prefix_length(), 1);
    EXPECT_TRUE(s.has_constant_tail());
    EXPECT_EQ(s.factor(1), spin::up());
    EXPECT_EQ(s.factor(1000), spin::up());
    EXPECT_EQ(s.label(), "all-up");
    EXPECT_EQ(code_of([&] { s.factor(0); }), ErrorCode::kIndexOutOfRange);
}

TEST(ProductStateTest, TrivialScalarState) {
    const ProductState s = constant_state(FactorVector{1.0});
    EXPECT_EQ(truncated_overlap(s, s, 1), Complex(1.0));
    EXPECT_EQ(truncated_overlap(s, s, 500), Complex(1.0));
}

TEST(ProductStateTest, RandomPrefixSelfOverlapIsOne) {
    std::mt19937_64 rng(11);
    std::vector<FactorVector> prefix;
    for (int k = 0; k < 3; ++k) prefix.push_back(testing::random_vector(rng, 2, true));
    const ProductState s(prefix, ConstantFactor{FactorVector::basis(2, 0)});
    for (Index n = 3; n <= 12; ++n) {
        EXPECT_NEAR(std::abs(truncated_overlap(s, s, n) - 1.0), 0.0, 1e-12);
        const auto dense = oracle::densify(s, n);
        EXPECT_NEAR(std::abs(oracle::dense_overlap(dense, dense) - 1.0), 0.0, 1e-12);
    }
}

TEST(ProductStateTest, MixedDimensionsPerPosition) {
    const ProductState s({FactorVector::basis(3, 2), FactorVector{1.0}}, ConstantFactor{spin::up()});
    EXPECT_EQ(s.dim_at(1), 3);
    EXPECT_EQ(s.dim_at(2), 1);
    EXPECT_EQ(s.dim_at(3), 2);
    const ProductState t({FactorVector::basis(2, 0)}, ConstantFactor{spin::up()});
    EXPECT_FALSE(same_shape(s, t));
    EXPECT_EQ(code_of([&] { truncated_overlap(s, t, 2); }), ErrorCode::kShapeMismatch);
}

TEST(ParametricFamilyTest, RotationFactorsAreUnitWithDeclaredOverlap) {
    const ParametricFamily f(FamilyMode::kRotation, spin::up(), DeviationLaw::p_series(0.5, 2.0));
    for (Index n = 1; n <= 50; ++n) {
        const FactorVector v = f.factor(n);
        EXPECT_NEAR(v.squared_norm(), 1.0, 1e-15);
        EXPECT_NEAR(inner(spin::up(), v).real(), f.overlap_with_base(n), 1e-15);
        EXPECT_NEAR(f.overlap_with_base(n), 1.0 - 0.5 / static_cast<double>(n * n), 1e-15);
        EXPECT_NEAR(std::sqrt((v.amplitudes() - spin::up().amplitudes()).squaredNorm()), f.distance_from_base(n),
                    1e-12);
    }
}

TEST(ParametricFamilyTest, ScalingFactorNorms) {
    const ParametricFamily f(FamilyMode::kScaling, spin::up(), DeviationLaw::geometric(0.3, 0.5));
    EXPECT_NEAR(f.factor(1).norm(), 1.15, 1e-15);
    EXPECT_NEAR(f.factor(3).norm(), 1.0375, 1e-15);
}

TEST(ParametricFamilyTest, ValidatesConstruction) {
    EXPECT_EQ(code_of([] { ParametricFamily(FamilyMode::kRotation, FactorVector{2.0, 0.0}, DeviationLaw::geometric(0.1, 0.5)); }),
              ErrorCode::kInvalidAmplitude);
    EXPECT_EQ(code_of([] {
                  ParametricFamily(FamilyMode::kRotation, spin::up(), DeviationLaw::geometric(0.1, 0.5), spin::plus());
              }),
              ErrorCode::kInvalidAmplitude);
    EXPECT_EQ(code_of([] { DeviationLaw::geometric(0.1, 1.0); }), ErrorCode::kInvalidArgument);
    EXPECT_EQ(code_of([] { DeviationLaw::p_series(0.1, 0.0); }), ErrorCode::kInvalidArgument);
    EXPECT_EQ(code_of([] { DeviationLaw::eventually_constant(0.1, 0); }), ErrorCode::kInvalidArgument);
}

TEST(ParametricFamilyTest, ShiftAndTransform) {
    const ParametricFamily f(FamilyMode::kRotation, spin::up(), DeviationLaw::p_series(0.5, 1.0));
    const ParametricFamily g = f.shifted(3);
    EXPECT_EQ(g.factor(4), f.factor(1));
    const ParametricFamily h = f.transformed(testing::pauli_x());
    EXPECT_EQ(h.base(), spin::down());
    EXPECT_NEAR(inner(spin::down(), h.factor(2)).real(), f.overlap_with_base(2), 1e-15);
    EXPECT_TRUE(f.same_family(f));
    EXPECT_FALSE(f.same_family(g));
}

TEST(CompositeStateTest, RequiresTermsOfOneShape) {
    EXPECT_EQ(code_of([] { CompositeState(std::vector<CompositeTerm>{}); }), ErrorCode::kInvalidArgument);
    EXPECT_EQ(code_of([] {
                  CompositeState({{1.0, constant_state(spin::up())}, {1.0, constant_state(FactorVector{1.0})}});
              }),
              ErrorCode::kShapeMismatch);
}

TEST(DistanceTest, ZeroForEqualStates) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const CompositeState a = testing::random_composite(rng, 3, 4, false);
        for (Index n : {1, 7, 64, 65, 200}) EXPECT_EQ(distance(a, a, n), 0.0);
    }
}

TEST(DistanceTest, OrthogonalSingleFactors) {
    const auto a = CompositeState::single(constant_state(spin::up()));
    const auto b = CompositeState::single(constant_state(spin::down()));
    EXPECT_EQ(distance(a, b, 1), 2.0);
}

TEST(DistanceTest, UpVersusPlusAtTen) {
    const auto a = CompositeState::single(constant_state(spin::up()));
    const auto b = CompositeState::single(constant_state(spin::plus()));
    EXPECT_NEAR(distance(a, b, 10), 1.9375, 1e-14);
    const auto da = oracle::densify(a, 10);
    const auto db = oracle::densify(b, 10);
    EXPECT_NEAR((da.amplitudes - db.amplitudes).squaredNorm(), 1.9375, 1e-12);
}

TEST(DistanceTest, SymmetricBitForBit) {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 50; ++trial) {
        const CompositeState a = testing::random_composite(rng, 3, 5, false);
        const CompositeState b = testing::random_composite(rng, 3, 5, false);
        for (Index n : {1, 3, 12, 80}) {
            const double d = distance(a, b, n);
            EXPECT_EQ(d, distance(b, a, n));
            EXPECT_GE(d, 0.0);
        }
    }
}

}  // namespace
}  // namespace sectorsim
