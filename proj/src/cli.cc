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

#include "sectorsim/cli.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "CLI11.hpp"
#include "sectorsim/decoherence.h"
#include "sectorsim/errors.h"
#include "sectorsim/infinite_products.h"
#include "sectorsim/json_io.h"
#include "sectorsim/operators.h"
#include "sectorsim/overlaps.h"
#include "sectorsim/scenarios.h"
#include "sectorsim/sectors.h"

namespace sectorsim {

namespace {

using json_io::Json;

constexpr Index kMaxTruncation = 10'000'000;
constexpr double kLn10 = 2.302585092994045684;

struct RunConfig {
    std::string spec_path, a_path, b_path, op_path, state_path, model_path;
    std::string out_path, horizons_path, stage_csv_path;
    std::string format = "csv";
    std::string xi = "1";
    Index fixed_differing = -1;
    Index n_max = 200;
    Index budget = 100000;
    Index shots = 100000;
    double tol = 1e-10;
    double eps = 1e-6;
    bool eps_given = false;
    bool require_exact = false;
    std::uint64_t seed = 0;
};

std::string fmt(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x < 0 ? "-inf" : "inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void emit(const RunConfig &cfg, const std::string &text, std::ostream &out) {
    if (cfg.out_path.empty()) {
        out << text;
    } else {
        json_io::write_file(cfg.out_path, text);
    }
}

std::string dump(const Json &j) { return j.dump(2) + "\n"; }

std::string sweep_csv(const OverlapSweep &sweep, const RunConfig &cfg) {
    std::ostringstream csv;
    csv << "N,re,im,log10_modulus" << (cfg.eps_given ? ",below_eps" : "") << "\n";
    const double log_eps = std::log(cfg.eps);
    for (std::size_t k = 0; k < sweep.size(); ++k) {
        csv << sweep.truncations[k] << "," << fmt(sweep.values[k].real()) << "," << fmt(sweep.values[k].imag()) << ","
            << fmt(sweep.log_modulus[k] / kLn10);
        if (cfg.eps_given) csv << "," << (sweep.log_modulus[k] < log_eps ? 1 : 0);
        csv << "\n";
    }
    return csv.str();
}

// ---------------------------------------------------------------------------
// Subcommands

std::string product_classify(const RunConfig &cfg) {
    const ComplexSequenceSpec spec = json_io::sequence_spec_from_json(json_io::read_file(cfg.spec_path));
    const ClassifyOptions options{cfg.budget, cfg.tol, cfg.require_exact};
    return dump(json_io::to_json(classify_product(spec, options)));
}

std::string sector_test(const RunConfig &cfg) {
    const ProductState a = json_io::state_from_json(json_io::read_file(cfg.a_path));
    const ProductState b = json_io::state_from_json(json_io::read_file(cfg.b_path));
    return dump(json_io::to_json(same_sector(a, b)));
}

std::string overlap_sweep_cmd(const RunConfig &cfg) {
    const ProductState a = json_io::state_from_json(json_io::read_file(cfg.a_path));
    const ProductState b = json_io::state_from_json(json_io::read_file(cfg.b_path));
    return sweep_csv(overlap_sweep(a, b, truncation_range(cfg.n_max)), cfg);
}

std::string expectation_sweep_cmd(const RunConfig &cfg) {
    const FactoredOperator op = json_io::operator_from_json(json_io::read_file(cfg.op_path));
    const ProductState s = json_io::state_from_json(json_io::read_file(cfg.state_path));
    return sweep_csv(expectation_sweep(op, s, truncation_range(cfg.n_max)), cfg);
}

json_io::DecohereReport decohere_report(const MeasurementModel &m, const RunConfig &cfg) {
    json_io::DecohereReport report;
    report.system_dim = m.system_dim();
    report.eps = cfg.eps;
    report.horizons = decoherence_horizon(m, cfg.eps);
    const std::vector<Index> truncations = truncation_range(cfg.n_max);
    report.rows.resize(truncations.size());
    for (std::size_t k = 0; k < truncations.size(); ++k) report.rows[k].truncation = truncations[k];
    const auto &s = m.amplitudes();
    for (int i = 0; i < m.system_dim(); ++i) {
        for (int j = i + 1; j < m.system_dim(); ++j) {
            const double mod = std::abs(s[static_cast<std::size_t>(i)]) * std::abs(s[static_cast<std::size_t>(j)]);
            const double log_mod = mod > 0.0 ? std::log(mod) : -std::numeric_limits<double>::infinity();
            const OverlapSweep sweep = overlap_sweep(m.devices()[static_cast<std::size_t>(j)],
                                                     m.devices()[static_cast<std::size_t>(i)], truncations);
            for (std::size_t k = 0; k < truncations.size(); ++k) {
                const double log_abs = log_mod + sweep.log_modulus[k];
                report.rows[k].abs.push_back(std::exp(log_abs));
                report.rows[k].log10_abs.push_back(log_abs / kLn10);
            }
        }
    }
    return report;
}

std::string decohere(const RunConfig &cfg) {
    const MeasurementModel m = json_io::model_from_json(json_io::read_file(cfg.model_path));
    const json_io::DecohereReport report = decohere_report(m, cfg);
    if (!cfg.horizons_path.empty()) {
        json_io::write_file(cfg.horizons_path, dump(json_io::horizons_to_json(report.horizons, cfg.eps)));
    }
    if (cfg.format == "json") return dump(json_io::to_json(report));
    std::ostringstream csv;
    csv << "N";
    for (int i = 0; i < m.system_dim(); ++i) {
        for (int j = i + 1; j < m.system_dim(); ++j) csv << ",abs_rho_" << i << j << ",log10_abs_rho_" << i << j;
    }
    csv << "\n";
    for (const auto &row : report.rows) {
        csv << row.truncation;
        for (std::size_t p = 0; p < row.abs.size(); ++p) csv << "," << fmt(row.abs[p]) << "," << fmt(row.log10_abs[p]);
        csv << "\n";
    }
    return csv.str();
}

std::string sample(const RunConfig &cfg) {
    const MeasurementModel m = json_io::model_from_json(json_io::read_file(cfg.model_path));
    json_io::SampleReport report{cfg.seed, cfg.shots, sample_counts(m, cfg.shots, cfg.seed), m.probabilities()};
    return dump(json_io::to_json(report));
}

std::string spin_sweep_cmd(const RunConfig &cfg) {
    SpinChainScenario scenario;
    scenario.xi = Fraction::parse(cfg.xi);
    if (cfg.fixed_differing >= 0) scenario.fixed_differing = cfg.fixed_differing;
    std::ostringstream csv;
    csv << "N,overlap,log10_overlap,probability,log10_probability,differing\n";
    for (const auto &row : spin_sweep(scenario, cfg.n_max)) {
        csv << row.truncation << "," << fmt(row.overlap) << "," << fmt(row.log10_overlap) << ","
            << fmt(row.probability) << "," << fmt(row.log10_probability) << "," << row.differing << "\n";
    }
    return csv.str();
}

std::string qnd_sim(const RunConfig &cfg) {
    const CascadeSpec spec = json_io::cascade_spec_from_json(json_io::read_file(cfg.spec_path));
    const CascadeRun run = run_cascade(spec, cfg.seed);
    if (!cfg.stage_csv_path.empty()) {
        std::ostringstream csv;
        csv << "stage,name,count,cumulative_dofs,log10_off_diagonal\n";
        for (const auto &row : cascade_stage_report(run)) {
            csv << row.stage << "," << row.name << "," << row.count << "," << row.cumulative_dofs << ","
                << fmt(row.off_diagonal_log10) << "\n";
        }
        json_io::write_file(cfg.stage_csv_path, csv.str());
    }
    return dump(json_io::to_json(run));
}

void report_error(std::ostream &err, std::string_view code, const std::string &message, const std::string &context) {
    err << Json{{"code", code}, {"message", message}, {"context", context}}.dump() << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    RunConfig cfg;
    CLI::App app{"Sector structure of infinite tensor product states"};
    app.require_subcommand(1);
    const auto positive_n = CLI::Range(Index{1}, kMaxTruncation);
    const auto positive_real = CLI::PositiveNumber;
    const auto add_out = [&](CLI::App *sub) { sub->add_option("--out", cfg.out_path, "Output file (default stdout)"); };

    auto *classify = app.add_subcommand("product-classify", "Classify an infinite product of complex numbers");
    classify->add_option("--spec", cfg.spec_path, "Product specification JSON")->required();
    classify->add_option("--budget", cfg.budget, "Maximum number of terms examined")->check(CLI::Range(Index{1}, Index{1} << 40));
    classify->add_option("--tol", cfg.tol, "Convergence tolerance")->check(positive_real);
    classify->add_flag("--require-exact", cfg.require_exact, "Refuse numeric-only verdicts");
    add_out(classify);

    auto *sector = app.add_subcommand("sector-test", "Decide whether two states lie in the same sector");
    sector->add_option("--a", cfg.a_path, "First state JSON")->required();
    sector->add_option("--b", cfg.b_path, "Second state JSON")->required();
    add_out(sector);

    auto *overlap = app.add_subcommand("overlap-sweep", "Truncated overlaps for N = 1..n-max (CSV)");
    overlap->add_option("--a", cfg.a_path, "Bra state JSON")->required();
    overlap->add_option("--b", cfg.b_path, "Ket state JSON")->required();
    overlap->add_option("--n-max", cfg.n_max, "Largest truncation")->check(positive_n);
    auto *overlap_eps = overlap->add_option("--eps", cfg.eps, "Adds a below_eps column")->check(positive_real);
    add_out(overlap);

    auto *expectation = app.add_subcommand("expectation-sweep", "Truncated expectation values (CSV)");
    expectation->add_option("--op", cfg.op_path, "Operator JSON")->required();
    expectation->add_option("--state", cfg.state_path, "State JSON")->required();
    expectation->add_option("--n-max", cfg.n_max, "Largest truncation")->check(positive_n);
    auto *expectation_eps = expectation->add_option("--eps", cfg.eps, "Adds a below_eps column")->check(positive_real);
    add_out(expectation);

    auto *deco = app.add_subcommand("decohere", "Off-diagonal density-matrix decay and decoherence horizons");
    deco->add_option("--model", cfg.model_path, "Measurement model JSON")->required();
    deco->add_option("--n-max", cfg.n_max, "Largest truncation")->check(positive_n);
    deco->add_option("--eps", cfg.eps, "Horizon threshold")->check(positive_real);
    deco->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    deco->add_option("--horizons", cfg.horizons_path, "Write horizons JSON to this file");
    add_out(deco);

    auto *samp = app.add_subcommand("sample", "Seeded Born-rule sampling of measurement outcomes");
    samp->add_option("--model", cfg.model_path, "Measurement model JSON")->required();
    samp->add_option("--shots", cfg.shots, "Number of samples")->check(CLI::Range(Index{0}, Index{1'000'000'000}));
    samp->add_option("--seed", cfg.seed, "Generator seed");
    add_out(samp);

    auto *spin = app.add_subcommand("spin-sweep", "Overlap of z-aligned and x-aligned spin chains (CSV)");
    spin->add_option("--xi", cfg.xi, "Fraction of differing sites, p/q or decimal");
    spin->add_option("--fixed-differing", cfg.fixed_differing, "Fixed number of differing sites instead of xi")
        ->check(CLI::NonNegativeNumber);
    spin->add_option("--n-max", cfg.n_max, "Largest truncation")->check(positive_n);
    add_out(spin);

    auto *qnd = app.add_subcommand("qnd-sim", "Amplification cascade run report (JSON)");
    qnd->add_option("--spec", cfg.spec_path, "Cascade specification JSON")->required();
    qnd->add_option("--seed", cfg.seed, "Generator seed");
    qnd->add_option("--stage-csv", cfg.stage_csv_path, "Write the per-stage table to this CSV file");
    add_out(qnd);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::Success &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        report_error(err, error_code_name(ErrorCode::kUsageError), e.what(), e.get_name());
        return kExitValidation;
    }
    cfg.eps_given = (overlap->parsed() && overlap_eps->count() > 0) ||
                    (expectation->parsed() && expectation_eps->count() > 0);

    try {
        std::string text;
        if (classify->parsed()) text = product_classify(cfg);
        if (sector->parsed()) text = sector_test(cfg);
        if (overlap->parsed()) text = overlap_sweep_cmd(cfg);
        if (expectation->parsed()) text = expectation_sweep_cmd(cfg);
        if (deco->parsed()) text = decohere(cfg);
        if (samp->parsed()) text = sample(cfg);
        if (spin->parsed()) text = spin_sweep_cmd(cfg);
        if (qnd->parsed()) text = qnd_sim(cfg);
        emit(cfg, text, out);
    } catch (const Error &e) {
        report_error(err, error_code_name(e.code()), e.what(), e.context());
        return e.code() == ErrorCode::kIoError ? kExitIo : kExitValidation;
    }
    return kExitOk;
}

}  // namespace sectorsim
