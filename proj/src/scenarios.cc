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

#include "sectorsim/scenarios.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "sectorsim/errors.h"
#include "sectorsim/overlaps.h"

namespace sectorsim {

namespace {

constexpr double kLn10 = 2.302585092994045684;
constexpr Index kCountCeiling = Index{1} << 62;

std::int64_t parse_digits(const std::string &digits, const std::string &text) {
    if (digits.empty() || digits.size() > 15 ||
        !std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); })) {
        throw Error(ErrorCode::kInvalidArgument, "malformed fraction", text);
    }
    return std::stoll(digits);
}

}  // namespace

Fraction Fraction::parse(const std::string &text) {
    Fraction f;
    if (const auto slash = text.find('/'); slash != std::string::npos) {
        f.numerator = parse_digits(text.substr(0, slash), text);
        f.denominator = parse_digits(text.substr(slash + 1), text);
    } else if (const auto dot = text.find('.'); dot != std::string::npos) {
        const std::string whole = text.substr(0, dot);
        const std::string frac = text.substr(dot + 1);
        f.denominator = 1;
        for (std::size_t k = 0; k < frac.size(); ++k) f.denominator *= 10;
        f.numerator = (whole.empty() ? 0 : parse_digits(whole, text)) * f.denominator +
                      (frac.empty() ? 0 : parse_digits(frac, text));
    } else {
        f.numerator = parse_digits(text, text);
        f.denominator = 1;
    }
    if (f.denominator == 0 || f.numerator > f.denominator) {
        throw Error(ErrorCode::kInvalidArgument, "fraction must lie in [0, 1]", text);
    }
    const std::int64_t g = std::gcd(f.numerator, f.denominator);
    f.numerator /= g;
    f.denominator /= g;
    return f;
}

// ---------------------------------------------------------------------------
// Spin chains

namespace {

void validate_scenario(const SpinChainScenario &scenario) {
    const Fraction &xi = scenario.xi;
    if (xi.denominator <= 0 || xi.numerator < 0 || xi.numerator > xi.denominator) {
        throw Error(ErrorCode::kInvalidArgument, "xi must be a fraction in [0, 1]");
    }
    if (scenario.fixed_differing && *scenario.fixed_differing < 0) {
        throw Error(ErrorCode::kInvalidArgument, "fixed differing count must be >= 0");
    }
}

bool site_differs(const SpinChainScenario &scenario, Index n) {
    if (scenario.fixed_differing) return n <= *scenario.fixed_differing;
    const Fraction &xi = scenario.xi;
    return (n * xi.numerator) / xi.denominator > ((n - 1) * xi.numerator) / xi.denominator;
}

bool admissible(const SpinChainScenario &scenario, Index truncation) {
    if (scenario.fixed_differing) return truncation >= *scenario.fixed_differing;
    return (truncation * scenario.xi.numerator) % scenario.xi.denominator == 0;
}

Index differing_count(const SpinChainScenario &scenario, Index truncation) {
    if (scenario.fixed_differing) return *scenario.fixed_differing;
    return truncation * scenario.xi.numerator / scenario.xi.denominator;
}

}  // namespace

SpinPair build_spin_pair(const SpinChainScenario &scenario, Index truncation) {
    validate_scenario(scenario);
    if (truncation < 1) throw Error(ErrorCode::kInvalidArgument, "truncation must be >= 1");
    if (!admissible(scenario, truncation)) {
        throw Error(scenario.fixed_differing ? ErrorCode::kInvalidArgument : ErrorCode::kNonIntegralFraction,
                    "the differing fraction does not give a whole number of sites",
                    "N=" + std::to_string(truncation));
    }
    std::vector<FactorVector> prefix;
    prefix.reserve(static_cast<std::size_t>(truncation));
    for (Index n = 1; n <= truncation; ++n) prefix.push_back(site_differs(scenario, n) ? spin::plus() : spin::up());
    const bool tails_differ = !scenario.fixed_differing && scenario.xi.numerator > 0;
    return {constant_state(spin::up(), "z-aligned"),
            ProductState(std::move(prefix), ConstantFactor{tails_differ ? spin::plus() : spin::up()}, "x-aligned"),
            differing_count(scenario, truncation)};
}

std::vector<SpinSweepRow> spin_sweep(const SpinChainScenario &scenario, Index n_max) {
    validate_scenario(scenario);
    if (n_max < 1) throw Error(ErrorCode::kInvalidArgument, "n-max must be >= 1");
    std::vector<Index> truncations;
    for (Index n = 1; n <= n_max; ++n) {
        if (admissible(scenario, n)) truncations.push_back(n);
    }
    std::vector<SpinSweepRow> rows;
    if (truncations.empty()) return rows;
    // The site pattern does not depend on N, so one pair built at the largest N serves every row.
    const SpinPair pair = build_spin_pair(scenario, truncations.back());
    const OverlapSweep sweep = overlap_sweep(pair.psi, pair.phi, truncations);
    for (std::size_t k = 0; k < sweep.size(); ++k) {
        const double log_mod = sweep.log_modulus[k];
        rows.push_back({truncations[k], differing_count(scenario, truncations[k]), sweep.values[k].real(),
                        log_mod / kLn10, std::exp(2.0 * log_mod), 2.0 * log_mod / kLn10});
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Cascade

void CascadeSpec::validate() const {
    const auto finite = [](Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); };
    if (!finite(alpha) || !finite(beta)) throw Error(ErrorCode::kInvalidAmplitude, "non-finite branch amplitude");
    if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > 1e-12) {
        throw Error(ErrorCode::kInvalidAmplitude, "|alpha|^2 + |beta|^2 must equal 1");
    }
    if (!(eta >= 0.0 && eta < 1.0)) throw Error(ErrorCode::kInvalidArgument, "eta must lie in [0, 1)");
    if (!(loss >= 0.0 && loss <= 1.0)) throw Error(ErrorCode::kInvalidArgument, "loss must lie in [0, 1]");
    if (!(dark_rate >= 0.0 && dark_rate <= 1.0)) {
        throw Error(ErrorCode::kInvalidArgument, "dark rate must lie in [0, 1]");
    }
    if (pair_dofs < 0) throw Error(ErrorCode::kInvalidArgument, "pair dofs must be >= 0");
    if (!stage_names.empty() && stage_names.size() != stages.size()) {
        throw Error(ErrorCode::kShapeMismatch, "one name per stage is required");
    }
    for (std::size_t k = 0; k < stages.size(); ++k) {
        const CountSpec &c = stages[k];
        const std::string where = "stage " + std::to_string(k + 1);
        if (!std::isfinite(c.value) || c.value < 0.0) {
            throw Error(ErrorCode::kInvalidArgument, "counts must be finite and >= 0", where);
        }
        if (c.law == CountLaw::kFixed && c.value != std::floor(c.value)) {
            throw Error(ErrorCode::kInvalidArgument, "fixed counts must be whole numbers", where);
        }
    }
}

namespace {

Index checked_product(Index parents, double per_parent) {
    const double total = static_cast<double>(parents) * per_parent;
    if (total >= static_cast<double>(kCountCeiling)) {
        throw Error(ErrorCode::kInvalidArgument, "cascade count exceeds the supported range");
    }
    return static_cast<Index>(total);
}

Index draw(const CountSpec &c, Index parents, std::mt19937_64 &rng) {
    if (c.law == CountLaw::kFixed) return checked_product(parents, c.value);
    const double mean = static_cast<double>(parents) * c.value;
    if (mean == 0.0) return 0;
    checked_product(parents, c.value);
    // A sum of independent Poisson draws is Poisson with the summed mean.
    return std::poisson_distribution<Index>(mean)(rng);
}

MeasurementModel branch_model(const CascadeSpec &spec) {
    const FactorVector q({Complex(spec.eta), Complex(std::sqrt(1.0 - spec.eta * spec.eta))});
    return MeasurementModel({spec.alpha, spec.beta},
                            {constant_state(FactorVector::basis(2, 0), "branch-0"), constant_state(q, "branch-q")});
}

double log10_off_diagonal(const CascadeSpec &spec, Index dofs) {
    const double mod = std::abs(spec.alpha) * std::abs(spec.beta);
    if (mod == 0.0) return -std::numeric_limits<double>::infinity();
    if (dofs == 0) return std::log10(mod);
    if (spec.eta == 0.0) return -std::numeric_limits<double>::infinity();
    return std::log10(mod) + static_cast<double>(dofs) * std::log10(spec.eta);
}

}  // namespace

CascadeRun run_cascade(const CascadeSpec &spec, std::uint64_t seed) {
    spec.validate();
    std::mt19937_64 rng(seed);
    std::vector<Index> counts;
    Index photoelectrons = 0;
    Index total = spec.pair_dofs;
    for (std::size_t k = 0; k < spec.stages.size(); ++k) {
        Index parents = 1;
        if (k == 1) parents = photoelectrons;
        if (k >= 2) parents = counts[k - 1];
        const Index count = draw(spec.stages[k], parents, rng);
        counts.push_back(count);
        if (k == 0) {
            photoelectrons = spec.loss > 0.0 ? std::binomial_distribution<Index>(count, 1.0 - spec.loss)(rng) : count;
            if (spec.dark_rate > 0.0) photoelectrons += std::poisson_distribution<Index>(spec.dark_rate)(rng);
        }
        if (total > kCountCeiling - count) {
            throw Error(ErrorCode::kInvalidArgument, "cascade count exceeds the supported range");
        }
        total += count;
    }

    MeasurementModel model = branch_model(spec);
    double off_diagonal = log10_off_diagonal(spec, 0);
    if (total > 0) off_diagonal = truncated_density(model, total).log_abs(0, 1) / kLn10;
    CascadeRun run{spec,  seed,  std::move(counts), photoelectrons, total, std::move(model), SectorKind::kInconclusive,
                   off_diagonal, total == 0};
    run.branch_verdict = same_sector(run.model.devices()[0], run.model.devices()[1]).kind;
    return run;
}

std::vector<CascadeStageRow> cascade_stage_report(const CascadeRun &run) {
    std::vector<CascadeStageRow> rows;
    Index cumulative = run.spec.pair_dofs;
    for (std::size_t k = 0; k < run.stage_counts.size(); ++k) {
        cumulative += run.stage_counts[k];
        std::string name = k < run.spec.stage_names.size() ? run.spec.stage_names[k] : "stage-" + std::to_string(k + 1);
        rows.push_back({static_cast<int>(k + 1), std::move(name), run.stage_counts[k], cumulative,
                        log10_off_diagonal(run.spec, cumulative)});
    }
    return rows;
}

}  // namespace sectorsim
