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

#include "sectorsim/json_io.h"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "sectorsim/errors.h"

namespace sectorsim::json_io {

namespace {

template <class F>
auto guarded(const char *what, F &&f) {
    try {
        return f();
    } catch (const nlohmann::json::exception &e) {
        throw Error(ErrorCode::kInvalidArgument, std::string("malformed ") + what, e.what());
    }
}

template <class T>
T lookup(const Json &j, const char *key, T fallback) {
    return j.contains(key) ? j.at(key).get<T>() : fallback;
}

ComplexMatrix matrix_from_json(const Json &j) {
    if (!j.is_array() || j.empty()) throw Error(ErrorCode::kInvalidArgument, "matrix must be a non-empty array");
    if (j.front().is_array()) {
        const auto d = static_cast<Eigen::Index>(j.size());
        ComplexMatrix m(d, d);
        for (Eigen::Index r = 0; r < d; ++r) {
            const Json &row = j.at(static_cast<std::size_t>(r));
            if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d) {
                throw Error(ErrorCode::kShapeMismatch, "matrix rows must all have length d");
            }
            for (Eigen::Index c = 0; c < d; ++c) m(r, c) = complex_from_json(row.at(static_cast<std::size_t>(c)));
        }
        return m;
    }
    const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(j.size()))));
    if (d * d != static_cast<Eigen::Index>(j.size())) {
        throw Error(ErrorCode::kShapeMismatch, "flat matrix length must be a perfect square");
    }
    ComplexMatrix m(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
        for (Eigen::Index c = 0; c < d; ++c) m(r, c) = complex_from_json(j.at(static_cast<std::size_t>(r * d + c)));
    }
    return m;
}

Json matrix_to_json(const ComplexMatrix &m) {
    Json out = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(to_json(m(r, c)));
    }
    return out;
}

Json tail_to_json(const TailRule &tail) {
    if (const auto *c = std::get_if<ConstantFactor>(&tail)) return {{"kind", "constant"}, {"vector", to_json(c->vector)}};
    const auto &f = std::get<ParametricFamily>(tail);
    const DeviationLaw &law = f.law();
    Json out = {{"kind", "parametric"},
                {"mode", f.mode() == FamilyMode::kRotation ? "rotation" : "scaling"},
                {"base", to_json(f.base())},
                {"partner", to_json(f.partner())},
                {"amplitude", law.amplitude()},
                {"shift", f.shift()}};
    switch (law.cls()) {
        case DeviationClass::kGeometric:
            out["class"] = "geometric";
            out["ratio"] = law.ratio();
            break;
        case DeviationClass::kPSeries:
            out["class"] = "p-series";
            out["p"] = law.exponent();
            break;
        case DeviationClass::kEventuallyConstant:
            out["class"] = "eventually-constant";
            out["onset"] = law.onset();
            break;
        case DeviationClass::kCustomCertified:
            throw Error(ErrorCode::kUnsupportedTail, "custom deviation laws have no JSON form");
    }
    return out;
}

TailRule tail_from_json(const Json &j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "constant") return ConstantFactor{vector_from_json(j.at("vector"))};
    if (kind != "parametric") throw Error(ErrorCode::kInvalidArgument, "unknown tail kind", kind);
    const std::string cls = j.at("class").get<std::string>();
    const double amplitude = lookup<double>(j, "amplitude", 0.0);
    const auto law = [&] {
        if (cls == "geometric") return DeviationLaw::geometric(amplitude, j.at("ratio").get<double>());
        if (cls == "p-series") return DeviationLaw::p_series(amplitude, j.at("p").get<double>());
        if (cls == "eventually-constant") return DeviationLaw::eventually_constant(amplitude, j.at("onset").get<Index>());
        throw Error(ErrorCode::kUndeclaredTailClass, "unknown parametric tail class", cls);
    }();
    const std::string mode = lookup<std::string>(j, "mode", "rotation");
    if (mode != "rotation" && mode != "scaling") throw Error(ErrorCode::kInvalidArgument, "unknown family mode", mode);
    std::optional<FactorVector> partner;
    if (j.contains("partner")) partner = vector_from_json(j.at("partner"));
    return ParametricFamily(mode == "rotation" ? FamilyMode::kRotation : FamilyMode::kScaling,
                            vector_from_json(j.at("base")), law, partner, lookup<Index>(j, "shift", 0));
}

Json operator_tail_to_json(const OperatorTail &tail) {
    if (const auto *id = std::get_if<IdentityOfDim>(&tail)) return {{"kind", "identity"}, {"dim", id->dim}};
    return {{"kind", "constant"}, {"matrix", matrix_to_json(std::get<ConstantOperator>(tail).op.matrix())}};
}

OperatorTail operator_tail_from_json(const Json &j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "identity") return IdentityOfDim{j.at("dim").get<int>()};
    if (kind == "constant") return ConstantOperator{FactorOperator(matrix_from_json(j.at("matrix")))};
    throw Error(ErrorCode::kInvalidArgument, "unknown operator tail kind", kind);
}

SequenceTail sequence_tail_from_json(const Json &j, bool force_custom) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "constant") return ConstantValue{complex_from_json(j.at("value"))};
    if (kind != "closed_form") throw Error(ErrorCode::kInvalidArgument, "unknown sequence tail kind", kind);
    const std::string family = j.at("family").get<std::string>();
    const auto declared = [&](ProductTailClass cls) {
        return force_custom ? std::optional<ProductTailClass>(ProductTailClass::kCustom) : std::optional(cls);
    };
    if (family == "one_plus_power") {
        const Complex c = complex_from_json(j.at("c"));
        const double p = j.at("p").get<double>();
        return ClosedForm([c, p](Index n) { return 1.0 + c * std::pow(static_cast<double>(n), -p); },
                          declared(ProductTailClass::kPSeriesLogModulus), p, family);
    }
    if (family == "one_plus_geometric") {
        const Complex c = complex_from_json(j.at("c"));
        const double r = j.at("r").get<double>();
        return ClosedForm([c, r](Index n) { return 1.0 + c * std::pow(r, static_cast<double>(n)); },
                          declared(ProductTailClass::kGeometricModulus), r, family);
    }
    if (family == "phase_harmonic") {
        const double a = j.at("a").get<double>();
        return ClosedForm([a](Index n) { return std::polar(1.0, a / static_cast<double>(n)); },
                          declared(ProductTailClass::kBoundedNonsummableArgument), 0.0, family);
    }
    if (family == "eventually_one") {
        std::vector<Complex> values;
        for (const auto &v : j.at("values")) values.push_back(complex_from_json(v));
        // Tail values are indexed from the first index after the prefix; the callback receives that offset.
        return ClosedForm(
            [values](Index k) { return k >= 1 && k <= static_cast<Index>(values.size()) ? values[k - 1] : Complex(1.0); },
            declared(ProductTailClass::kEventuallyOne), 0.0, family);
    }
    if (family == "custom") throw Error(ErrorCode::kUndeclaredTailClass, "custom closed forms need a callback");
    throw Error(ErrorCode::kInvalidArgument, "unknown closed-form family", family);
}

Json certificate_to_json(const SectorCertificate &c) {
    return {{"differing_indices", c.differing_indices},
            {"prefix_series_sum", c.prefix_series_sum},
            {"limit_term", c.limit_term},
            {"comparison", c.comparison},
            {"comparison_parameter", c.comparison_parameter},
            {"lower_bound_coefficient", c.lower_bound_coefficient},
            {"lower_bound_exponent", c.lower_bound_exponent},
            {"witness_from_index", c.witness_from_index},
            {"note", c.note}};
}

SectorCertificate certificate_from_json(const Json &j) {
    SectorCertificate c;
    c.differing_indices = lookup<std::vector<Index>>(j, "differing_indices", {});
    c.prefix_series_sum = lookup<double>(j, "prefix_series_sum", 0.0);
    c.limit_term = lookup<double>(j, "limit_term", 0.0);
    c.comparison = lookup<std::string>(j, "comparison", "");
    c.comparison_parameter = lookup<double>(j, "comparison_parameter", 0.0);
    c.lower_bound_coefficient = lookup<double>(j, "lower_bound_coefficient", 0.0);
    c.lower_bound_exponent = lookup<double>(j, "lower_bound_exponent", 0.0);
    c.witness_from_index = lookup<Index>(j, "witness_from_index", 0);
    c.note = lookup<std::string>(j, "note", "");
    return c;
}

template <class Enum, std::size_t K>
Enum enum_from_name(const std::string &name, const Enum (&values)[K], std::string_view (*namer)(Enum)) {
    for (Enum v : values) {
        if (namer(v) == name) return v;
    }
    throw Error(ErrorCode::kInvalidArgument, "unknown enumerator", name);
}

Json horizon_list(const HorizonMap &horizons) {
    Json list = Json::array();
    for (const auto &[pair, n] : horizons) {
        list.push_back({{"i", pair.first}, {"j", pair.second}, {"N", n ? Json(*n) : Json(nullptr)}});
    }
    return list;
}

HorizonMap horizon_map(const Json &list) {
    HorizonMap out;
    for (const auto &h : list) {
        const Json &n = h.at("N");
        out[{h.at("i").get<int>(), h.at("j").get<int>()}] = n.is_null() ? std::nullopt : std::optional(n.get<Index>());
    }
    return out;
}

Json count_to_json(const std::string &name, const CountSpec &c) {
    Json out = {{"name", name}, {"law", c.law == CountLaw::kFixed ? "fixed" : "poisson"}};
    out[c.law == CountLaw::kFixed ? "value" : "mean"] = c.value;
    return out;
}

CountSpec count_from_json(const Json &j) {
    if (j.is_number()) return {CountLaw::kFixed, j.get<double>()};
    if (j.contains("poisson")) return {CountLaw::kPoisson, j.at("poisson").get<double>()};
    const std::string law = lookup<std::string>(j, "law", "fixed");
    if (law == "fixed") return {CountLaw::kFixed, j.at("value").get<double>()};
    if (law == "poisson") return {CountLaw::kPoisson, j.at("mean").get<double>()};
    throw Error(ErrorCode::kInvalidArgument, "count law must be fixed or poisson", law);
}

}  // namespace

Json read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::kIoError, "cannot open input file", path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw Error(ErrorCode::kIoError, "cannot read input file", path);
    try {
        return Json::parse(buffer.str());
    } catch (const nlohmann::json::exception &e) {
        throw Error(ErrorCode::kInvalidArgument, "input is not valid JSON", path + ": " + e.what());
    }
}

void write_file(const std::string &path, const std::string &contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::kIoError, "cannot open output file", path);
    out << contents;
    if (!out) throw Error(ErrorCode::kIoError, "cannot write output file", path);
}

Json parse(const std::string &text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw Error(ErrorCode::kInvalidArgument, "input is not valid JSON", e.what());
    }
}

Json number_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

double number_or_neg_inf(const Json &j) {
    return j.is_null() ? -std::numeric_limits<double>::infinity() : j.get<double>();
}

Json to_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

Complex complex_from_json(const Json &j) {
    return guarded("complex number", [&] {
        if (j.is_number()) return Complex(j.get<double>(), 0.0);
        return Complex(j.at("re").get<double>(), lookup<double>(j, "im", 0.0));
    });
}

Json to_json(const FactorVector &v) {
    Json out = Json::array();
    for (int k = 0; k < v.dim(); ++k) out.push_back(to_json(v[k]));
    return out;
}

FactorVector vector_from_json(const Json &j) {
    return guarded("factor vector", [&] {
        if (!j.is_array()) throw Error(ErrorCode::kInvalidArgument, "factor vector must be an array");
        ComplexVector v(static_cast<Eigen::Index>(j.size()));
        for (std::size_t k = 0; k < j.size(); ++k) v[static_cast<Eigen::Index>(k)] = complex_from_json(j[k]);
        return FactorVector(std::move(v));
    });
}

Json to_json(const ProductState &s) {
    Json prefix = Json::array();
    for (const auto &f : s.prefix()) prefix.push_back(to_json(f));
    return {{"prefix", prefix}, {"tail", tail_to_json(s.tail())}, {"label", s.label()}};
}

ProductState state_from_json(const Json &j) {
    return guarded("state", [&] {
        std::vector<FactorVector> prefix;
        if (j.contains("prefix")) {
            for (const auto &f : j.at("prefix")) prefix.push_back(vector_from_json(f));
        }
        return ProductState(std::move(prefix), tail_from_json(j.at("tail")), lookup<std::string>(j, "label", ""));
    });
}

Json to_json(const FactoredOperator &op) {
    Json terms = Json::array();
    for (const auto &t : op.terms()) {
        Json prefix = Json::array();
        for (const auto &u : t.prefix_ops) prefix.push_back(matrix_to_json(u.matrix()));
        terms.push_back({{"coeff", to_json(t.coefficient)}, {"prefix_ops", prefix}, {"tail", operator_tail_to_json(t.tail)}});
    }
    return {{"terms", terms}};
}

FactoredOperator operator_from_json(const Json &j) {
    return guarded("operator", [&] {
        std::vector<OperatorTerm> terms;
        for (const auto &t : j.at("terms")) {
            OperatorTerm term;
            term.coefficient = t.contains("coeff") ? complex_from_json(t.at("coeff")) : Complex(1.0);
            if (t.contains("prefix_ops")) {
                for (const auto &m : t.at("prefix_ops")) term.prefix_ops.emplace_back(matrix_from_json(m));
            }
            term.tail = operator_tail_from_json(t.at("tail"));
            terms.push_back(std::move(term));
        }
        return FactoredOperator(std::move(terms));
    });
}

ComplexSequenceSpec sequence_spec_from_json(const Json &j) {
    return guarded("product specification", [&] {
        std::vector<Complex> prefix;
        if (j.contains("prefix")) {
            for (const auto &z : j.at("prefix")) prefix.push_back(complex_from_json(z));
        }
        bool force_custom = false;
        if (j.contains("class")) {
            const std::string cls = j.at("class").get<std::string>();
            if (cls != "custom") throw Error(ErrorCode::kInvalidArgument, "only \"custom\" may override the class", cls);
            force_custom = true;
        }
        SequenceTail tail = sequence_tail_from_json(j.at("tail"), force_custom);
        if (auto *cf = std::get_if<ClosedForm>(&tail); cf && cf->name() == "eventually_one") {
            // Re-base the listed values so that values[0] sits right after the prefix.
            const Index offset = static_cast<Index>(prefix.size());
            ClosedForm shifted([inner = *cf, offset](Index n) { return inner(n - offset); }, cf->cls(),
                               cf->parameter(), cf->name());
            tail = std::move(shifted);
        }
        return ComplexSequenceSpec(std::move(prefix), std::move(tail));
    });
}

Json to_json(const ConvergenceVerdict &v) {
    const ConvergenceDiagnostics &d = v.diagnostics;
    Json partial = Json::array();
    for (const auto &[n, z] : d.partial_products) partial.push_back({{"n", n}, {"value", to_json(z)}});
    return {{"kind", convergence_kind_name(v.kind)},
            {"value", to_json(v.value)},
            {"diagnostics",
             {{"partial_products", partial},
              {"log_modulus_sum", number_or_null(d.log_modulus_sum)},
              {"argument_drift", d.argument_drift},
              {"terms_examined", d.terms_examined},
              {"exact", d.exact},
              {"method", d.method},
              {"error_estimate", d.error_estimate}}}};
}

ConvergenceVerdict convergence_verdict_from_json(const Json &j) {
    return guarded("convergence verdict", [&] {
        static const ConvergenceKind kinds[] = {ConvergenceKind::kConvergesTo, ConvergenceKind::kQuasiConvergesToZero,
                                                ConvergenceKind::kDiverges, ConvergenceKind::kInconclusive};
        ConvergenceVerdict v;
        v.kind = enum_from_name(j.at("kind").get<std::string>(), kinds, convergence_kind_name);
        v.value = complex_from_json(j.at("value"));
        const Json &d = j.at("diagnostics");
        for (const auto &p : d.at("partial_products")) {
            v.diagnostics.partial_products.emplace_back(p.at("n").get<Index>(), complex_from_json(p.at("value")));
        }
        v.diagnostics.log_modulus_sum = number_or_neg_inf(d.at("log_modulus_sum"));
        v.diagnostics.argument_drift = d.at("argument_drift").get<double>();
        v.diagnostics.terms_examined = d.at("terms_examined").get<Index>();
        v.diagnostics.exact = d.at("exact").get<bool>();
        v.diagnostics.method = d.at("method").get<std::string>();
        v.diagnostics.error_estimate = d.at("error_estimate").get<double>();
        return v;
    });
}

Json to_json(const SectorVerdict &v) {
    return {{"kind", sector_kind_name(v.kind)}, {"certificate", certificate_to_json(v.certificate)}};
}

SectorVerdict sector_verdict_from_json(const Json &j) {
    return guarded("sector verdict", [&] {
        static const SectorKind kinds[] = {SectorKind::kSameSector, SectorKind::kDifferentSector,
                                           SectorKind::kInconclusive};
        SectorVerdict v;
        v.kind = enum_from_name(j.at("kind").get<std::string>(), kinds, sector_kind_name);
        if (j.contains("certificate")) v.certificate = certificate_from_json(j.at("certificate"));
        return v;
    });
}

Json to_json(const MeasurementModel &m) {
    Json amplitudes = Json::array();
    for (const Complex s : m.amplitudes()) amplitudes.push_back(to_json(s));
    Json devices = Json::array();
    for (const auto &d : m.devices()) devices.push_back(to_json(d));
    Json out = {{"amplitudes", amplitudes}, {"devices", devices}};
    if (m.ready_state()) out["ready_state"] = to_json(*m.ready_state());
    return out;
}

MeasurementModel model_from_json(const Json &j) {
    return guarded("measurement model", [&] {
        std::vector<Complex> amplitudes;
        for (const auto &s : j.at("amplitudes")) amplitudes.push_back(complex_from_json(s));
        std::vector<ProductState> devices;
        for (const auto &d : j.at("devices")) devices.push_back(state_from_json(d));
        std::optional<ProductState> ready;
        if (j.contains("ready_state")) ready = state_from_json(j.at("ready_state"));
        return MeasurementModel(std::move(amplitudes), std::move(devices), std::move(ready));
    });
}

Json horizons_to_json(const HorizonMap &horizons, double eps) {
    return {{"eps", eps}, {"horizons", horizon_list(horizons)}};
}

std::pair<double, HorizonMap> horizons_from_json(const Json &j) {
    return guarded("horizons", [&] { return std::make_pair(j.at("eps").get<double>(), horizon_map(j.at("horizons"))); });
}

Json to_json(const SampleReport &r) {
    Json outcomes = Json::array();
    for (std::size_t i = 0; i < r.counts.size(); ++i) {
        const double freq = r.shots > 0 ? static_cast<double>(r.counts[i]) / static_cast<double>(r.shots) : 0.0;
        outcomes.push_back(
            {{"outcome", i}, {"count", r.counts[i]}, {"frequency", freq}, {"probability", r.probabilities.at(i)}});
    }
    return {{"seed", r.seed}, {"shots", r.shots}, {"outcomes", outcomes}};
}

SampleReport sample_report_from_json(const Json &j) {
    return guarded("sample report", [&] {
        SampleReport r;
        r.seed = j.at("seed").get<std::uint64_t>();
        r.shots = j.at("shots").get<Index>();
        for (const auto &o : j.at("outcomes")) {
            r.counts.push_back(o.at("count").get<Index>());
            r.probabilities.push_back(o.at("probability").get<double>());
        }
        return r;
    });
}

Json to_json(const DecohereReport &r) {
    Json rows = Json::array();
    for (const auto &row : r.rows) {
        Json log10_abs = Json::array();
        for (double x : row.log10_abs) log10_abs.push_back(number_or_null(x));
        rows.push_back({{"N", row.truncation}, {"abs", row.abs}, {"log10_abs", log10_abs}});
    }
    return {{"system_dim", r.system_dim}, {"rows", rows}, {"eps", r.eps}, {"horizons", horizon_list(r.horizons)}};
}

DecohereReport decohere_report_from_json(const Json &j) {
    return guarded("decoherence report", [&] {
        DecohereReport r;
        r.system_dim = j.at("system_dim").get<int>();
        for (const auto &row : j.at("rows")) {
            DecohereRow out;
            out.truncation = row.at("N").get<Index>();
            out.abs = row.at("abs").get<std::vector<double>>();
            for (const auto &x : row.at("log10_abs")) out.log10_abs.push_back(number_or_neg_inf(x));
            r.rows.push_back(std::move(out));
        }
        r.eps = j.at("eps").get<double>();
        r.horizons = horizon_map(j.at("horizons"));
        return r;
    });
}

Json to_json(const CascadeSpec &spec) {
    Json stages = Json::array();
    for (std::size_t k = 0; k < spec.stages.size(); ++k) {
        const std::string name = k < spec.stage_names.size() ? spec.stage_names[k] : "stage-" + std::to_string(k + 1);
        stages.push_back(count_to_json(name, spec.stages[k]));
    }
    return {{"alpha", to_json(spec.alpha)}, {"beta", to_json(spec.beta)}, {"eta", spec.eta},
            {"loss", spec.loss},            {"dark_rate", spec.dark_rate}, {"pair_dofs", spec.pair_dofs},
            {"stages", stages}};
}

CascadeSpec cascade_spec_from_json(const Json &j) {
    return guarded("cascade specification", [&] {
        CascadeSpec spec;
        if (j.contains("alpha")) spec.alpha = complex_from_json(j.at("alpha"));
        if (j.contains("beta")) spec.beta = complex_from_json(j.at("beta"));
        spec.eta = j.at("eta").get<double>();
        spec.loss = lookup<double>(j, "loss", 0.0);
        spec.dark_rate = lookup<double>(j, "dark_rate", 0.0);
        spec.pair_dofs = lookup<Index>(j, "pair_dofs", 0);
        if (j.contains("stages")) {
            for (const auto &s : j.at("stages")) {
                spec.stages.push_back(count_from_json(s));
                spec.stage_names.push_back(
                    s.is_object() ? lookup<std::string>(s, "name", "stage-" + std::to_string(spec.stages.size()))
                                  : "stage-" + std::to_string(spec.stages.size()));
            }
        } else {
            const std::pair<const char *, const char *> shorthand[] = {
                {"F", "fluorescence"}, {"S", "secondary"}, {"K", "phosphorescence"}};
            for (const auto &[key, name] : shorthand) {
                if (!j.contains(key)) break;
                spec.stages.push_back(count_from_json(j.at(key)));
                spec.stage_names.emplace_back(name);
            }
        }
        spec.validate();
        return spec;
    });
}

Json to_json(const CascadeRun &run) {
    Json stages = Json::array();
    for (const auto &row : cascade_stage_report(run)) {
        stages.push_back({{"stage", row.stage},
                          {"name", row.name},
                          {"count", row.count},
                          {"cumulative_dofs", row.cumulative_dofs},
                          {"off_diagonal_log10", number_or_null(row.off_diagonal_log10)}});
    }
    return {{"seed", run.seed},
            {"spec", to_json(run.spec)},
            {"stage_counts", run.stage_counts},
            {"photoelectrons", run.photoelectrons},
            {"total_dofs", run.total_dofs},
            {"branch_verdict", sector_kind_name(run.branch_verdict)},
            {"off_diagonal_log10", number_or_null(run.off_diagonal_log10)},
            {"degenerate", run.degenerate},
            {"model", to_json(run.model)},
            {"stages", stages}};
}

CascadeRun cascade_run_from_json(const Json &j) {
    return guarded("cascade run", [&] {
        static const SectorKind kinds[] = {SectorKind::kSameSector, SectorKind::kDifferentSector,
                                           SectorKind::kInconclusive};
        return CascadeRun{cascade_spec_from_json(j.at("spec")),
                          j.at("seed").get<std::uint64_t>(),
                          j.at("stage_counts").get<std::vector<Index>>(),
                          j.at("photoelectrons").get<Index>(),
                          j.at("total_dofs").get<Index>(),
                          model_from_json(j.at("model")),
                          enum_from_name(j.at("branch_verdict").get<std::string>(), kinds, sector_kind_name),
                          number_or_neg_inf(j.at("off_diagonal_log10")),
                          j.at("degenerate").get<bool>()};
    });
}

}  // namespace sectorsim::json_io
