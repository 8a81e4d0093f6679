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

#include "sector_suite.h"
#include "sectorsim/errors.h"
#include "sectorsim/overlaps.h"
#include "sectorsim/sectors.h"
#include "test_support.h"

namespace sectorsim {
namespace {

ProductState scaled_tail(double norm) { return constant_state(spin::up().scaled(norm)); }

TEST(ClassifySequenceTest, UnitFactorsAreNonTrivial) {
    EXPECT_EQ(classify_sequence(constant_state(spin::plus())).kind, SequenceKind::kNonTrivialConvergent);
}

TEST(ClassifySequenceTest, ShrinkingConstantTailIsOnlyConvergent) {
    const SequenceClass c = classify_sequence(scaled_tail(0.9));
    EXPECT_EQ(c.kind, SequenceKind::kConvergent);
    EXPECT_TRUE(c.is_c_sequence());
    EXPECT_FALSE(c.is_c0_sequence());
}

TEST(ClassifySequenceTest, GrowingConstantTailIsNotConvergent) {
    EXPECT_EQ(classify_sequence(scaled_tail(1.1)).kind, SequenceKind::kNotConvergent);
}

TEST(ClassifySequenceTest, InverseSquareNormsAreNonTrivial) {
    const ProductState s({}, ParametricFamily(FamilyMode::kScaling, spin::up(), DeviationLaw::p_series(1.0, 2.0)));
    EXPECT_EQ(classify_sequence(s).kind, SequenceKind::kNonTrivialConvergent);
    const ProductState h({}, ParametricFamily(FamilyMode::kScaling, spin::up(), DeviationLaw::p_series(1.0, 1.0)));
    EXPECT_EQ(classify_sequence(h).kind, SequenceKind::kNotConvergent);
}

TEST(ClassifySequenceTest, ZeroPrefixFactorIsNotNonTrivial) {
    const ProductState s({FactorVector{0.0, 0.0}}, ConstantFactor{spin::up()});
    EXPECT_FALSE(classify_sequence(s).is_c0_sequence());
}

TEST(SameSectorTest, Reflexive) {
    const ProductState s = constant_state(spin::rotated(0.7));
    EXPECT_EQ(same_sector(s, s).kind, SectorKind::kSameSector);
}

TEST(SameSectorTest, ThreeChangedPrefixFactors) {
    const ProductState a({spin::up(), spin::up(), spin::up(), spin::up()}, ConstantFactor{spin::up()});
    const ProductState b({spin::down(), spin::plus(), spin::up(), spin::minus()}, ConstantFactor{spin::up()});
    const SectorVerdict v = same_sector(a, b);
    EXPECT_EQ(v.kind, SectorKind::kSameSector);
    EXPECT_EQ(v.certificate.differing_indices, (std::vector<Index>{1, 2, 4}));
    EXPECT_TRUE(verify_sector_certificate(a, b, v));
}

TEST(SameSectorTest, UpVersusPlusWitness) {
    const SectorVerdict v = same_sector(constant_state(spin::up()), constant_state(spin::plus()));
    EXPECT_EQ(v.kind, SectorKind::kDifferentSector);
    EXPECT_NEAR(v.certificate.limit_term, 1.0 - M_SQRT1_2, 1e-15);
    EXPECT_NEAR(v.certificate.lower_bound_coefficient, 0.2929, 1e-4);
    EXPECT_EQ(v.certificate.lower_bound_exponent, 0.0);
}

TEST(SameSectorTest, NearZeroGapIsInconclusive) {
    // |<v|w> - 1| ~ 5e-11, between the two tolerances.
    const ProductState a = constant_state(spin::up());
    const ProductState b = constant_state(spin::rotated(2.0 * std::sqrt(1e-10)));
    const SectorVerdict v = same_sector(a, b);
    EXPECT_EQ(v.kind, SectorKind::kInconclusive);
    EXPECT_FALSE(v.certificate.note.empty());
}

TEST(SameSectorTest, RejectsNonNormalizableInput) {
    try {
        same_sector(scaled_tail(0.9), constant_state(spin::up()));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kPreconditionViolated);
    }
    EXPECT_THROW(same_sector(constant_state(FactorVector{1.0}), constant_state(spin::up())), Error);
}

TEST(SameSectorTest, CustomUncertifiedTailIsInconclusive) {
    const ProductState a = constant_state(spin::up());
    const ProductState b({}, ParametricFamily(FamilyMode::kRotation, spin::up(),
                                              DeviationLaw::custom_certified([](Index n) { return 0.1 / n; }, false)));
    EXPECT_EQ(same_sector(a, b).kind, SectorKind::kInconclusive);
}

TEST(StructuredSuiteTest, VerdictsMatchAndCertificatesVerify) {
    const auto suite = testing::structured_sector_suite();
    ASSERT_GE(suite.size(), 50u);
    for (const auto &c : suite) {
        const SectorVerdict v = same_sector(c.a, c.b);
        EXPECT_EQ(v.kind, c.expected) << c.name << " note=" << v.certificate.note;
        EXPECT_TRUE(verify_sector_certificate(c.a, c.b, v)) << c.name;
    }
}

TEST(StructuredSuiteTest, EquivalenceAxioms) {
    const auto states = testing::suite_states(testing::structured_sector_suite());
    const std::size_t n = states.size();
    std::vector<std::vector<SectorKind>> m(n, std::vector<SectorKind>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m[i][j] = same_sector(states[i], states[j]).kind;
    }
    for (std::size_t i = 0; i < n; ++i) {
        EXPECT_EQ(m[i][i], SectorKind::kSameSector) << i;
        for (std::size_t j = 0; j < n; ++j) {
            ASSERT_NE(m[i][j], SectorKind::kInconclusive) << i << "," << j;
            EXPECT_EQ(m[i][j], m[j][i]) << i << "," << j;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (m[i][j] != SectorKind::kSameSector) continue;
            for (std::size_t k = 0; k < n; ++k) {
                if (m[j][k] == SectorKind::kSameSector) ASSERT_EQ(m[i][k], SectorKind::kSameSector) << i << j << k;
            }
        }
    }
}

TEST(StructuredSuiteTest, DifferentSectorsDecayBelowEveryEpsilon) {
    std::vector<Index> grid;
    for (Index n = 1; n <= 200000; n = n < 64 ? n + 1 : n + n / 8) grid.push_back(n);
    for (const auto &c : testing::structured_sector_suite()) {
        if (c.expected != SectorKind::kDifferentSector) continue;
        const OverlapSweep sweep = overlap_sweep(c.a, c.b, grid);
        const Complex limit = inner(tail_limit(c.a.tail()), tail_limit(c.b.tail()));
        if (std::abs(std::abs(limit) - 1.0) < 1e-12 && std::abs(limit - 1.0) > kSectorGapTolerance) {
            // Pure phase drift: the modulus never decays; orthogonality holds only as a quasi-limit.
            for (double lm : sweep.log_modulus) EXPECT_NEAR(lm, 0.0, 1e-9) << c.name;
            EXPECT_EQ(asymptotic_overlap(c.a, c.b), Complex(0.0)) << c.name;
            continue;
        }
        for (std::size_t k = 1; k < sweep.size(); ++k) {
            EXPECT_LE(sweep.log_modulus[k], sweep.log_modulus[k - 1] + 1e-12) << c.name;
        }
        for (double eps : {1e-2, 1e-4, 1e-6}) EXPECT_TRUE(sweep.first_below(eps).has_value()) << c.name << " " << eps;
    }
}

TEST(NormedRepresentativeTest, UnitStateUnchanged) {
    const ProductState s({spin::rotated(0.4)}, ConstantFactor{spin::plus()});
    const ProductState r = normed_representative(s);
    EXPECT_NEAR((r.factor(1).amplitudes() - s.factor(1).amplitudes()).norm(), 0.0, 1e-15);
    EXPECT_EQ(r.factor(9), s.factor(9));
}

TEST(NormedRepresentativeTest, ScaledPrefixFactor) {
    const ProductState s({spin::up().scaled(2.0), spin::plus()}, ConstantFactor{spin::up()});
    const ProductState r = normed_representative(s);
    EXPECT_EQ(r.factor(1), spin::up());
    EXPECT_TRUE(r.factor(2).is_unit());
    EXPECT_EQ(same_sector(s, r).kind, SectorKind::kSameSector);
}

TEST(NormedRepresentativeTest, PhaseIsKept) {
    const FactorVector phased = spin::up().scaled(std::polar(1.0, M_PI / 3));
    const ProductState r = normed_representative(ProductState({phased}, ConstantFactor{spin::up()}));
    EXPECT_NEAR((r.factor(1).amplitudes() - phased.amplitudes()).norm(), 0.0, 1e-15);
}

TEST(NormedRepresentativeTest, ZeroNormFactor) {
    try {
        normed_representative(ProductState({FactorVector{0.0, 0.0}}, ConstantFactor{spin::up()}));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kZeroNormFactor);
    }
}

TEST(FiniteChangeTest, EmptyChangeIsIdentity) {
    const ProductState s = constant_state(spin::up());
    const ProductState t = apply_finite_change(s, {});
    EXPECT_EQ(t.prefix_length(), s.prefix_length());
    EXPECT_EQ(t.factor(3), s.factor(3));
}

TEST(FiniteChangeTest, FlipGivesSameSectorButZeroOverlap) {
    const ProductState s = constant_state(spin::up());
    const ProductState t = apply_finite_change(s, {{4, spin::down()}});
    EXPECT_EQ(same_sector(s, t).kind, SectorKind::kSameSector);
    EXPECT_EQ(truncated_overlap(s, t, 3), Complex(1.0));
    for (Index n : {4, 10, 100, 1000}) EXPECT_EQ(truncated_overlap(s, t, n), Complex(0.0));
}

TEST(FiniteChangeTest, FivePlusSitesInTheTail) {
    const ProductState s = constant_state(spin::up());
    std::map<Index, FactorVector> changes;
    for (Index n = 3; n <= 7; ++n) changes.emplace(n, spin::plus());
    const ProductState t = apply_finite_change(s, changes);
    EXPECT_EQ(t.prefix_length(), 7);
    EXPECT_EQ(same_sector(s, t).kind, SectorKind::kSameSector);
    for (Index n : {7, 12, 300}) EXPECT_NEAR(truncated_overlap(s, t, n).real(), std::pow(M_SQRT1_2, 5), 1e-15);
}

TEST(FiniteChangeTest, RandomChangeSetsStayInSector) {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        const ProductState s = testing::random_qubit_state(rng, 6, true);
        std::map<Index, FactorVector> changes;
        const int size = std::uniform_int_distribution<int>(0, 20)(rng);
        std::uniform_int_distribution<Index> site(1, 60);
        for (int k = 0; k < size; ++k) changes.insert_or_assign(site(rng), testing::random_vector(rng, 2, true));
        EXPECT_EQ(same_sector(s, apply_finite_change(s, changes)).kind, SectorKind::kSameSector);
    }
}

TEST(FiniteChangeTest, RejectsBadIndicesAndShapes) {
    const ProductState s = constant_state(spin::up());
    EXPECT_THROW(apply_finite_change(s, {{0, spin::down()}}), Error);
    EXPECT_THROW(apply_finite_change(s, {{2, FactorVector{1.0}}}), Error);
}

}  // namespace
}  // namespace sectorsim
