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

// Every structured argument crosses the boundary as a JSON string in the
// same schema the command-line tool reads.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "sectorsim/cli.h"
#include "sectorsim/decoherence.h"
#include "sectorsim/errors.h"
#include "sectorsim/infinite_products.h"
#include "sectorsim/json_io.h"
#include "sectorsim/operators.h"
#include "sectorsim/overlaps.h"
#include "sectorsim/scenarios.h"
#include "sectorsim/sectors.h"

namespace py = pybind11;
using namespace sectorsim;

namespace {

py::exception<Error> *error_type = nullptr;

ProductState state(const std::string &text) { return json_io::state_from_json(json_io::parse(text)); }
MeasurementModel model(const std::string &text) { return json_io::model_from_json(json_io::parse(text)); }

py::list sweep_rows(const OverlapSweep &sweep) {
    py::list rows;
    for (std::size_t k = 0; k < sweep.size(); ++k) {
        rows.append(py::make_tuple(sweep.truncations[k], sweep.values[k], sweep.log_modulus[k] / M_LN10));
    }
    return rows;
}

}  // namespace

PYBIND11_MODULE(_sectorsim, m) {
    m.doc() = "Sector structure of infinite tensor product states";

    // Intentionally never destroyed: the translator may run until interpreter shutdown.
    error_type = new py::exception<Error>(m, "SectorsimError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error &e) {
            const std::string code(error_code_name(e.code()));
            py::object exc = py::reinterpret_borrow<py::object>(error_type->ptr())(code + ": " + e.what());
            exc.attr("code") = code;
            exc.attr("context") = e.context();
            PyErr_SetObject(error_type->ptr(), exc.ptr());
        }
    });

    m.def(
        "classify_product",
        [](const std::string &spec, Index budget, double tol) {
            const ClassifyOptions options{budget, tol, false};
            return json_io::to_json(classify_product(json_io::sequence_spec_from_json(json_io::parse(spec)), options))
                .dump();
        },
        py::arg("spec"), py::arg("budget") = 100000, py::arg("tol") = 1e-10);

    m.def(
        "same_sector", [](const std::string &a, const std::string &b) {
            return json_io::to_json(same_sector(state(a), state(b))).dump();
        },
        py::arg("a"), py::arg("b"));

    m.def(
        "truncated_overlap",
        [](const std::string &a, const std::string &b, Index n) { return truncated_overlap(state(a), state(b), n); },
        py::arg("a"), py::arg("b"), py::arg("n"));

    m.def(
        "overlap_sweep",
        [](const std::string &a, const std::string &b, Index n_max) {
            return sweep_rows(overlap_sweep(state(a), state(b), truncation_range(n_max)));
        },
        py::arg("a"), py::arg("b"), py::arg("n_max"));

    m.def(
        "expectation_sweep",
        [](const std::string &op, const std::string &s, Index n_max) {
            return sweep_rows(expectation_sweep(json_io::operator_from_json(json_io::parse(op)), state(s),
                                                truncation_range(n_max)));
        },
        py::arg("op"), py::arg("state"), py::arg("n_max"));

    m.def(
        "sector_action",
        [](const std::string &op, const std::string &s) {
            const SectorActionVerdict v = sector_action(json_io::operator_from_json(json_io::parse(op)), state(s));
            return py::make_tuple(std::string(sector_action_kind_name(v.kind)), v.witness.reason);
        },
        py::arg("op"), py::arg("state"));

    m.def(
        "truncated_density", [](const std::string &mdl, Index n) { return truncated_density(model(mdl), n).entries; },
        py::arg("model"), py::arg("n"));

    m.def(
        "decoherence_horizon",
        [](const std::string &mdl, double eps) {
            py::dict out;
            for (const auto &[pair, n] : decoherence_horizon(model(mdl), eps)) {
                out[py::make_tuple(pair.first, pair.second)] = n ? py::cast(*n) : py::none();
            }
            return out;
        },
        py::arg("model"), py::arg("eps"));

    m.def(
        "sample_counts",
        [](const std::string &mdl, Index shots, std::uint64_t seed) { return sample_counts(model(mdl), shots, seed); },
        py::arg("model"), py::arg("shots"), py::arg("seed"));

    m.def(
        "spin_sweep",
        [](const std::string &xi, Index n_max) {
            SpinChainScenario scenario;
            scenario.xi = Fraction::parse(xi);
            py::list rows;
            for (const auto &r : spin_sweep(scenario, n_max)) {
                rows.append(py::make_tuple(r.truncation, r.overlap, r.log10_overlap, r.probability));
            }
            return rows;
        },
        py::arg("xi"), py::arg("n_max"));

    m.def(
        "run_cascade",
        [](const std::string &spec, std::uint64_t seed) {
            return json_io::to_json(run_cascade(json_io::cascade_spec_from_json(json_io::parse(spec)), seed)).dump();
        },
        py::arg("spec"), py::arg("seed"));

    m.def(
        "run_cli",
        [](const std::vector<std::string> &args) {
            std::ostringstream out, err;
            const int code = run_cli(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));
}
