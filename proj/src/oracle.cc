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

#include "sectorsim/oracle.h"

#include "sectorsim/errors.h"

namespace sectorsim::oracle {

namespace {

std::vector<int> truncated_dims(const ProductState &s, Index truncation) {
    if (truncation < 1) throw Error(ErrorCode::kInvalidArgument, "truncation must be >= 1");
    std::vector<int> dims;
    Index size = 1;
    for (Index n = 1; n <= truncation; ++n) {
        const int d = s.dim_at(n);
        if (size > kDenseBudget / d) {
            throw Error(ErrorCode::kDimensionBudgetExceeded, "dense expansion exceeds 2^20 amplitudes",
                        "N=" + std::to_string(truncation));
        }
        size *= d;
        dims.push_back(d);
    }
    return dims;
}

Index total_size(const std::vector<int> &dims) {
    Index size = 1;
    for (int d : dims) size *= d;
    return size;
}

}  // namespace

DenseState densify(const ProductState &s, Index truncation) {
    DenseState out{truncated_dims(s, truncation), ComplexVector::Ones(1)};
    for (Index n = 1; n <= truncation; ++n) {
        const ComplexVector v = s.factor(n).amplitudes();
        ComplexVector next(out.amplitudes.size() * v.size());
        for (Eigen::Index i = 0; i < out.amplitudes.size(); ++i) {
            for (Eigen::Index k = 0; k < v.size(); ++k) next[i * v.size() + k] = out.amplitudes[i] * v[k];
        }
        out.amplitudes = std::move(next);
    }
    return out;
}

DenseState densify(const CompositeState &s, Index truncation) {
    DenseState out{truncated_dims(s.front(), truncation), {}};
    out.amplitudes = ComplexVector::Zero(total_size(out.dims));
    for (const auto &term : s.terms()) out.amplitudes += term.coefficient * densify(term.state, truncation).amplitudes;
    return out;
}

Complex dense_overlap(const DenseState &a, const DenseState &b) {
    if (a.dims != b.dims) throw Error(ErrorCode::kShapeMismatch, "dense states have different factor dimensions");
    return a.amplitudes.dot(b.amplitudes);
}

DenseState dense_apply(const FactoredOperator &op, const DenseState &s) {
    DenseState out{s.dims, ComplexVector::Zero(s.amplitudes.size())};
    for (const auto &term : op.terms()) {
        ComplexVector v = s.amplitudes;
        Index stride = total_size(s.dims);
        for (std::size_t site = 0; site < s.dims.size(); ++site) {
            const int d = s.dims[site];
            stride /= d;
            const FactorOperator *u = term.op_at(static_cast<Index>(site + 1));
            if (!u) continue;
            if (u->dim() != d) throw Error(ErrorCode::kShapeMismatch, "operator and dense state dimensions differ");
            // Index = (outer * d + digit) * stride + inner.
            const Index outer_count = v.size() / (d * stride);
            ComplexVector next = ComplexVector::Zero(v.size());
            for (Index outer = 0; outer < outer_count; ++outer) {
                for (Index inner = 0; inner < stride; ++inner) {
                    for (int row = 0; row < d; ++row) {
                        Complex acc = 0.0;
                        for (int col = 0; col < d; ++col) {
                            acc += u->matrix()(row, col) * v[(outer * d + col) * stride + inner];
                        }
                        next[(outer * d + row) * stride + inner] = acc;
                    }
                }
            }
            v = std::move(next);
        }
        out.amplitudes += term.coefficient * v;
    }
    return out;
}

Complex dense_expectation(const FactoredOperator &op, const DenseState &s) {
    return dense_overlap(s, dense_apply(op, s));
}

ComplexMatrix dense_density(const MeasurementModel &m, Index truncation) {
    const DenseState out = densify(premeasurement_state(m), truncation + 1);
    const int dim = m.system_dim();
    const Index rest = out.amplitudes.size() / dim;
    ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            Complex acc = 0.0;
            for (Index r = 0; r < rest; ++r) acc += out.amplitudes[i * rest + r] * std::conj(out.amplitudes[j * rest + r]);
            rho(i, j) = acc;
        }
    }
    return rho;
}

}  // namespace sectorsim::oracle
