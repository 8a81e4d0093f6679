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
 * JSON readers and writers for every interchange format. Complex numbers are
 * {"re": x, "im": y} (a bare number is accepted on input). Non-finite
 * log-moduli are written as null and read back as -inf.
 *
 * State:
 *   {"prefix": [[c, ...], ...],
 *    "tail": {"kind": "constant", "vector": [c, ...]}
 *          | {"kind": "parametric", "class": "geometric" | "p-series" | "eventually-constant",
 *             "mode": "rotation" | "scaling", "base": [c, ...], "partner": [c, ...],
 *             "amplitude": a, "ratio": r, "p": p, "onset": k, "shift": s},
 *    "label": "..."}
 *
 * Operator:
 *   {"terms": [{"coeff": c, "prefix_ops": [m, ...],
 *               "tail": {"kind": "identity", "dim": d} | {"kind": "constant", "matrix": m}}]}
 *   where a matrix m is a flat row-major list of d*d entries or a list of rows.
 *
 * Product specification (product-classify):
 *   {"prefix": [c, ...],
 *    "tail": {"kind": "constant", "value": c}
 *          | {"kind": "closed_form", "family": "one_plus_power", "c": c, "p": p}
 *          | {"kind": "closed_form", "family": "one_plus_geometric", "c": c, "r": r}
 *          | {"kind": "closed_form", "family": "phase_harmonic", "a": a}
 *          | {"kind": "closed_form", "family": "eventually_one", "values": [c, ...]},
 *    "class": "custom"}   (optional; forces the numeric path)
 *
 * Measurement model: {"amplitudes": [c, ...], "devices": [state, ...], "ready_state": state}.
 *
 * Cascade: {"alpha": c, "beta": c, "eta": x, "loss": x, "dark_rate": x, "pair_dofs": k,
 *           "stages": [{"name": "...", "law": "fixed", "value": k} | {"law": "poisson", "mean": m}]}
 *   "F", "S" and "K" (a number for a fixed count, or {"poisson": mean}) may replace "stages".
 */

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "sectorsim/core_model.h"
#include "sectorsim/decoherence.h"
#include "sectorsim/infinite_products.h"
#include "sectorsim/operators.h"
#include "sectorsim/scenarios.h"
#include "sectorsim/sectors.h"

namespace sectorsim::json_io {

using Json = nlohmann::json;

Json read_file(const std::string &path);
void write_file(const std::string &path, const std::string &contents);
/// Parses text; malformed input raises InvalidArgument.
Json parse(const std::string &text);

Json number_or_null(double x);
double number_or_neg_inf(const Json &j);

Json to_json(Complex z);
Complex complex_from_json(const Json &j);

Json to_json(const FactorVector &v);
FactorVector vector_from_json(const Json &j);

Json to_json(const ProductState &s);
ProductState state_from_json(const Json &j);

Json to_json(const FactoredOperator &op);
FactoredOperator operator_from_json(const Json &j);

ComplexSequenceSpec sequence_spec_from_json(const Json &j);

Json to_json(const ConvergenceVerdict &v);
ConvergenceVerdict convergence_verdict_from_json(const Json &j);

Json to_json(const SectorVerdict &v);
SectorVerdict sector_verdict_from_json(const Json &j);

Json to_json(const MeasurementModel &m);
MeasurementModel model_from_json(const Json &j);

Json horizons_to_json(const HorizonMap &horizons, double eps);
std::pair<double, HorizonMap> horizons_from_json(const Json &j);

struct SampleReport {
    std::uint64_t seed = 0;
    Index shots = 0;
    std::vector<Index> counts;
    std::vector<double> probabilities;
};

Json to_json(const SampleReport &r);
SampleReport sample_report_from_json(const Json &j);

struct DecohereRow {
    Index truncation = 0;
    /// Upper-triangle entries in (0,1), (0,2), ..., (1,2), ... order.
    std::vector<double> abs;
    std::vector<double> log10_abs;
};

struct DecohereReport {
    int system_dim = 0;
    std::vector<DecohereRow> rows;
    double eps = 0.0;
    HorizonMap horizons;
};

Json to_json(const DecohereReport &r);
DecohereReport decohere_report_from_json(const Json &j);

Json to_json(const CascadeSpec &spec);
CascadeSpec cascade_spec_from_json(const Json &j);

Json to_json(const CascadeRun &run);
CascadeRun cascade_run_from_json(const Json &j);

}  // namespace sectorsim::json_io
