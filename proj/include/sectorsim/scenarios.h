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
 * Two worked scenarios: spin-1/2 chains aligned along z versus x, and a
 * measurement amplification cascade whose branch states are distinguished
 * by an ever growing number of degrees of freedom.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sectorsim/core_model.h"
#include "sectorsim/decoherence.h"
#include "sectorsim/sectors.h"

namespace sectorsim {

// ---------------------------------------------------------------------------
// Spin chains

/// Exact fraction numerator / denominator in [0, 1].
struct Fraction {
    std::int64_t numerator = 1;
    std::int64_t denominator = 1;

    /// Accepts "p/q" or a finite decimal such as "0.25".
    static Fraction parse(const std::string &text);
    double value() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }
};

struct SpinChainScenario {
    /// Fraction of sites set to |+> instead of |up>.
    Fraction xi{1, 1};
    /// When set, exactly this many leading sites differ for every N and the tails agree
    /// (a finite change); xi is then ignored.
    std::optional<Index> fixed_differing;
};

struct SpinPair {
    /// All |up>.
    ProductState psi;
    /// |+> on the differing sites among 1..N, |up> elsewhere in the prefix. The tail is |+>
    /// when xi > 0 so the pattern keeps differing beyond N, |up> otherwise.
    ProductState phi;
    Index differing = 0;
};

/// Throws NonIntegralFraction when xi * N is not an integer.
SpinPair build_spin_pair(const SpinChainScenario &scenario, Index truncation);

struct SpinSweepRow {
    Index truncation;
    Index differing;
    double overlap;
    double log10_overlap;
    double probability;
    double log10_probability;
};

/// One row for every N in 1..n_max at which xi * N is integral.
std::vector<SpinSweepRow> spin_sweep(const SpinChainScenario &scenario, Index n_max);

// ---------------------------------------------------------------------------
// Amplification cascade

enum class CountLaw { kFixed, kPoisson };

struct CountSpec {
    CountLaw law = CountLaw::kFixed;
    /// Fixed count, or Poisson mean.
    double value = 0.0;
};

/**
 * Stage 1 draws the fluorescence photon count F once. Every later stage draws
 * a count per unit of the previous stage (secondaries per photoelectron,
 * photons per secondary, ...). Losses thin the fluorescence photons before
 * they become photoelectrons; dark counts add Poisson(dark_rate)
 * photoelectrons.
 */
struct CascadeSpec {
    Complex alpha = M_SQRT1_2;
    Complex beta = M_SQRT1_2;
    std::vector<std::string> stage_names;
    std::vector<CountSpec> stages;
    /// |<0|q>| per degree of freedom, in [0, 1).
    double eta = 0.0;
    double loss = 0.0;
    double dark_rate = 0.0;
    /// Extra degrees of freedom distinguishing the branches before the cascade.
    Index pair_dofs = 0;

    void validate() const;
};

struct CascadeRun {
    CascadeSpec spec;
    std::uint64_t seed = 0;
    /// Realized total count per stage.
    std::vector<Index> stage_counts;
    /// Photoelectrons after losses and dark counts (parents of stage 2).
    Index photoelectrons = 0;
    /// D = pair_dofs + sum of stage counts.
    Index total_dofs = 0;
    /// Branch devices |0...> and (eta|0> + sqrt(1 - eta^2)|1>)^(x)... with system amplitudes (alpha, beta).
    MeasurementModel model;
    SectorKind branch_verdict = SectorKind::kInconclusive;
    /// log10 |rho_01| at N = D.
    double off_diagonal_log10 = 0.0;
    /// True when D == 0 and the branches are not distinguished at all.
    bool degenerate = false;
};

CascadeRun run_cascade(const CascadeSpec &spec, std::uint64_t seed);

struct CascadeStageRow {
    int stage;
    std::string name;
    Index count;
    Index cumulative_dofs;
    double off_diagonal_log10;
};

/// Cumulative degrees of freedom and log10 |rho_01| after each stage.
std::vector<CascadeStageRow> cascade_stage_report(const CascadeRun &run);

}  // namespace sectorsim
