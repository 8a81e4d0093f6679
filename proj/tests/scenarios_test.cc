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

#include "sectorsim/errors.h"
#include "sectorsim/overlaps.h"
#include "sectorsim/scenarios.h"
#include "sectorsim/sectors.h"

namespace sectorsim {
namespace {

// log10(0.5) + D log10(0.99) for D = 10, 1010, 51010.
constexpr double kStageLog10[] = {-0.344678049688482, -4.709483452138567, -222.949753574642800};

ErrorCode code_of(const std::function<void()> &f) {
    try {
        f();
    } catch (const Error &e) {
        return e.code();
    }
    return ErrorCode::kUsageError;
}

CascadeSpec ideal_spec() {
    CascadeSpec spec;
    spec.stage_names = {"fluorescence", "secondaries", "phosphorescence"};
    spec.stages = {{CountLaw::kFixed, 10}, {CountLaw::kFixed, 100}, {CountLaw::kFixed, 50}};
    spec.eta = 0.99;
    return spec;
}

CascadeSpec poisson_spec() {
    CascadeSpec spec = ideal_spec();
    spec.stages = {{CountLaw::kPoisson, 10}, {CountLaw::kPoisson, 100}, {CountLaw::kPoisson, 50}};
    return spec;
}

TEST(FractionTest, Parse) {
    const Fraction half = Fraction::parse("3/6");
    EXPECT_EQ(half.numerator, 1);
    EXPECT_EQ(half.denominator, 2);
    const Fraction quarter = Fraction::parse("0.25");
    EXPECT_EQ(quarter.numerator, 1);
    EXPECT_EQ(quarter.denominator, 4);
    EXPECT_EQ(Fraction::parse("1").value(), 1.0);
    EXPECT_EQ(Fraction::parse("0").numerator, 0);
    for (const char *bad : {"2/1", "abc", "1/0", "-1/2", "0.5x", ""}) {
        EXPECT_EQ(code_of([&] { Fraction::parse(bad); }), ErrorCode::kInvalidArgument) << bad;
    }
}

TEST(SpinPairTest, FullChainAtTen) {
    const SpinPair p = build_spin_pair({Fraction{1, 1}, std::nullopt}, 10);
    EXPECT_EQ(p.differing, 10);
    EXPECT_NEAR(truncated_overlap(p.psi, p.phi, 10).real(), 0.03125, 1e-16);
}

TEST(SpinPairTest, ZeroFractionGivesIdenticalStates) {
    const SpinPair p = build_spin_pair({Fraction{0, 1}, std::nullopt}, 10);
    EXPECT_EQ(p.differing, 0);
    EXPECT_EQ(truncated_overlap(p.psi, p.phi, 10), Complex(1.0));
    EXPECT_EQ(same_sector(p.psi, p.phi).kind, SectorKind::kSameSector);
}

TEST(SpinPairTest, HalfFractionSameVerdictAsFull) {
    const SpinPair half = build_spin_pair({Fraction{1, 2}, std::nullopt}, 20);
    const SpinPair full = build_spin_pair({Fraction{1, 1}, std::nullopt}, 20);
    EXPECT_EQ(half.differing, 10);
    EXPECT_NEAR(truncated_overlap(half.psi, half.phi, 20).real(), std::pow(M_SQRT1_2, 10), 1e-16);
    EXPECT_EQ(same_sector(half.psi, half.phi).kind, SectorKind::kDifferentSector);
    EXPECT_EQ(same_sector(full.psi, full.phi).kind, SectorKind::kDifferentSector);
}

TEST(SpinPairTest, DifferingSitesSpreadEvenly) {
    const SpinPair p = build_spin_pair({Fraction{1, 3}, std::nullopt}, 12);
    EXPECT_EQ(p.differing, 4);
    for (Index n = 3; n <= 12; n += 3) {
        EXPECT_NEAR(truncated_overlap(p.psi, p.phi, n).real(), std::pow(M_SQRT1_2, double(n / 3)), 1e-15);
    }
}

TEST(SpinPairTest, NonIntegralFraction) {
    EXPECT_EQ(code_of([] { build_spin_pair({Fraction{1, 3}, std::nullopt}, 10); }), ErrorCode::kNonIntegralFraction);
}

TEST(SpinPairTest, FixedDifferingIsAFiniteChange) {
    const SpinChainScenario scenario{Fraction{1, 1}, Index{5}};
    for (Index n : {5, 10, 100}) {
        const SpinPair p = build_spin_pair(scenario, n);
        EXPECT_EQ(p.differing, 5);
        EXPECT_EQ(same_sector(p.psi, p.phi).kind, SectorKind::kSameSector);
        EXPECT_NEAR(truncated_overlap(p.psi, p.phi, n).real(), std::pow(M_SQRT1_2, 5), 1e-15);
    }
    EXPECT_EQ(code_of([&] { build_spin_pair(scenario, 4); }), ErrorCode::kInvalidArgument);
}

TEST(SpinSweepTest, ExactDecayUpTo400) {
    const auto rows = spin_sweep({Fraction{1, 1}, std::nullopt}, 400);
    ASSERT_EQ(rows.size(), 400u);
    for (const auto &r : rows) {
        const double n = double(r.truncation);
        const double expected = -0.5 * n * std::log10(2.0);
        EXPECT_NEAR(r.log10_overlap / expected, 1.0, 1e-12);
        EXPECT_NEAR(r.log10_probability / (2.0 * expected), 1.0, 1e-12);
        EXPECT_NEAR(r.probability / std::ldexp(1.0, -int(r.truncation)), 1.0, 1e-12);
        EXPECT_EQ(r.differing, r.truncation);
    }
}

TEST(SpinSweepTest, FractionalRowsOnlyWhereIntegral) {
    const auto rows = spin_sweep({Fraction{1, 4}, std::nullopt}, 40);
    ASSERT_EQ(rows.size(), 10u);
    for (const auto &r : rows) {
        EXPECT_EQ(r.truncation % 4, 0);
        EXPECT_EQ(r.differing, r.truncation / 4);
        EXPECT_NEAR(r.log10_probability, -double(r.differing) * std::log10(2.0), 1e-12);
    }
}

TEST(CascadeTest, IdealSpec) {
    const CascadeRun run = run_cascade(ideal_spec(), 7);
    EXPECT_EQ(run.stage_counts, (std::vector<Index>{10, 1000, 50000}));
    EXPECT_EQ(run.total_dofs, 51010);
    EXPECT_EQ(run.photoelectrons, 10);
    EXPECT_NEAR(run.off_diagonal_log10, kStageLog10[2], 1e-9);
    EXPECT_EQ(run.branch_verdict, SectorKind::kDifferentSector);
    EXPECT_FALSE(run.degenerate);
}

TEST(CascadeTest, StageReport) {
    const auto rows = cascade_stage_report(run_cascade(ideal_spec(), 7));
    ASSERT_EQ(rows.size(), 3u);
    const Index cumulative[] = {10, 1010, 51010};
    for (int k = 0; k < 3; ++k) {
        EXPECT_EQ(rows[k].stage, k + 1);
        EXPECT_EQ(rows[k].cumulative_dofs, cumulative[k]);
        EXPECT_NEAR(rows[k].off_diagonal_log10, kStageLog10[k], 1e-9);
    }
    EXPECT_EQ(rows[1].name, "secondaries");
}

TEST(CascadeTest, NoFluorescenceIsDegenerate) {
    CascadeSpec spec = ideal_spec();
    spec.stages[0].value = 0;
    const CascadeRun run = run_cascade(spec, 1);
    EXPECT_TRUE(run.degenerate);
    EXPECT_EQ(run.total_dofs, 0);
    EXPECT_NEAR(run.off_diagonal_log10, std::log10(0.5), 1e-15);
}

TEST(CascadeTest, PoissonRunsAreReproducible) {
    const CascadeRun a = run_cascade(poisson_spec(), 99);
    const CascadeRun b = run_cascade(poisson_spec(), 99);
    EXPECT_EQ(a.stage_counts, b.stage_counts);
    EXPECT_EQ(a.off_diagonal_log10, b.off_diagonal_log10);
    bool any_difference = false;
    for (std::uint64_t seed = 100; seed < 110; ++seed) {
        any_difference |= run_cascade(poisson_spec(), seed).stage_counts != a.stage_counts;
    }
    EXPECT_TRUE(any_difference);
}

TEST(CascadeTest, PoissonMeansAreRight) {
    CascadeSpec spec = poisson_spec();
    spec.stages.resize(2);
    spec.stage_names.resize(2);
    double f = 0.0, s = 0.0;
    const int runs = 4000;
    for (int seed = 0; seed < runs; ++seed) {
        const CascadeRun r = run_cascade(spec, seed);
        f += double(r.stage_counts[0]);
        s += double(r.stage_counts[1]);
    }
    // E[F] = 10 and E[S total] = 10 * 100; standard errors ~0.05 and ~5.
    EXPECT_NEAR(f / runs, 10.0, 0.25);
    EXPECT_NEAR(s / runs, 1000.0, 25.0);
}

TEST(CascadeTest, SingleStage) {
    CascadeSpec spec = ideal_spec();
    spec.stages.resize(1);
    spec.stage_names.resize(1);
    EXPECT_EQ(cascade_stage_report(run_cascade(spec, 3)).size(), 1u);
}

TEST(CascadeTest, ExactlyOrthogonalBranches) {
    CascadeSpec spec = ideal_spec();
    spec.eta = 0.0;
    const auto rows = cascade_stage_report(run_cascade(spec, 3));
    for (const auto &r : rows) EXPECT_EQ(r.off_diagonal_log10, -std::numeric_limits<double>::infinity());
}

TEST(CascadeTest, AddingStagesNeverIncreasesCoherence) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        double previous = std::log10(0.5);
        for (std::size_t k = 1; k <= 3; ++k) {
            CascadeSpec spec = poisson_spec();
            spec.stages.resize(k);
            spec.stage_names.resize(k);
            const CascadeRun run = run_cascade(spec, seed);
            EXPECT_LE(run.off_diagonal_log10, previous + 1e-12);
            previous = run.off_diagonal_log10;
            const auto rows = cascade_stage_report(run);
            for (std::size_t r = 1; r < rows.size(); ++r) {
                EXPECT_LE(rows[r].off_diagonal_log10, rows[r - 1].off_diagonal_log10);
            }
        }
    }
}

TEST(CascadeTest, LossesThinPhotoelectrons) {
    CascadeSpec spec = ideal_spec();
    spec.loss = 1.0;
    const CascadeRun run = run_cascade(spec, 5);
    EXPECT_EQ(run.photoelectrons, 0);
    EXPECT_EQ(run.stage_counts, (std::vector<Index>{10, 0, 0}));
    EXPECT_EQ(run.total_dofs, 10);

    spec.loss = 0.5;
    spec.dark_rate = 0.5;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const CascadeRun r = run_cascade(spec, seed);
        EXPECT_EQ(r.stage_counts[1], 100 * r.photoelectrons);
    }
}

TEST(CascadeTest, Validation) {
    CascadeSpec spec = ideal_spec();
    spec.eta = 1.0;
    EXPECT_EQ(code_of([&] { spec.validate(); }), ErrorCode::kInvalidArgument);
    spec = ideal_spec();
    spec.alpha = 1.0;
    EXPECT_EQ(code_of([&] { spec.validate(); }), ErrorCode::kInvalidAmplitude);
    spec = ideal_spec();
    spec.stages[1].value = -3;
    EXPECT_EQ(code_of([&] { spec.validate(); }), ErrorCode::kInvalidArgument);
    spec = ideal_spec();
    spec.stages[1].value = 2.5;
    EXPECT_EQ(code_of([&] { spec.validate(); }), ErrorCode::kInvalidArgument);
    spec = ideal_spec();
    spec.loss = 1.5;
    EXPECT_EQ(code_of([&] { spec.validate(); }), ErrorCode::kInvalidArgument);
}

}  // namespace
}  // namespace sectorsim
