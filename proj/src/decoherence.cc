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

#include "sectorsim/decoherence.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "sectorsim/errors.h"
#include "sectorsim/log_product.h"
#include "sectorsim/overlaps.h"
#include "sectorsim/sectors.h"

namespace sectorsim {

namespace {

constexpr double kNormalizationTolerance = 1e-12;

void require_unit_factors(const ProductState &d, int i) {
    const std::string where = "device " + std::to_string(i);
    for (const auto &f : d.prefix()) {
        if (!f.is_unit()) throw Error(ErrorCode::kInvalidArgument, "device factors must be unit-norm", where);
    }
    const auto *family = std::get_if<ParametricFamily>(&d.tail());
    if (!tail_limit(d.tail()).is_unit() || (family && family->mode() != FamilyMode::kRotation)) {
        throw Error(ErrorCode::kInvalidArgument, "device tail factors must be unit-norm", where);
    }
}

}  // namespace

MeasurementModel::MeasurementModel(std::vector<Complex> amplitudes, std::vector<ProductState> devices,
                                   std::optional<ProductState> ready_state)
    : amplitudes_(std::move(amplitudes)), devices_(std::move(devices)), ready_(std::move(ready_state)) {
    if (amplitudes_.empty()) throw Error(ErrorCode::kInvalidArgument, "measurement model needs M >= 1");
    if (amplitudes_.size() != devices_.size()) {
        throw Error(ErrorCode::kShapeMismatch, "one device state per outcome is required");
    }
    double total = 0.0;
    for (const Complex s : amplitudes_) {
        if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
            throw Error(ErrorCode::kInvalidAmplitude, "non-finite system amplitude");
        }
        total += std::norm(s);
    }
    if (std::abs(total - 1.0) > kNormalizationTolerance) {
        throw Error(ErrorCode::kInvalidAmplitude, "system amplitudes are not normalized",
                    "sum |s_i|^2 = " + std::to_string(total));
    }
    for (std::size_t i = 0; i < devices_.size(); ++i) {
        require_same_shape(devices_.front(), devices_[i]);
        require_unit_factors(devices_[i], static_cast<int>(i));
    }
    if (ready_) require_same_shape(devices_.front(), *ready_);
    for (std::size_t i = 0; i < devices_.size(); ++i) {
        for (std::size_t j = i + 1; j < devices_.size(); ++j) {
            if (same_sector(devices_[i], devices_[j]).kind != SectorKind::kDifferentSector) {
                throw Error(ErrorCode::kPreconditionViolated, "device states must lie in different sectors",
                            "devices " + std::to_string(i) + " and " + std::to_string(j));
            }
        }
    }
}

std::vector<double> MeasurementModel::probabilities() const {
    std::vector<double> out;
    out.reserve(amplitudes_.size());
    for (const Complex s : amplitudes_) out.push_back(std::norm(s));
    return out;
}

CompositeState premeasurement_state(const MeasurementModel &m) {
    const int dim = m.system_dim();
    std::vector<CompositeTerm> terms;
    for (int i = 0; i < dim; ++i) {
        const ProductState &d = m.devices()[static_cast<std::size_t>(i)];
        std::vector<FactorVector> prefix;
        prefix.reserve(d.prefix().size() + 1);
        prefix.push_back(FactorVector::basis(dim, i));
        prefix.insert(prefix.end(), d.prefix().begin(), d.prefix().end());
        TailRule tail = d.tail();
        if (auto *family = std::get_if<ParametricFamily>(&tail)) tail = family->shifted(1);
        terms.push_back({m.amplitudes()[static_cast<std::size_t>(i)],
                         ProductState(std::move(prefix), std::move(tail), d.label())});
    }
    return CompositeState(std::move(terms));
}

double TruncatedDensityMatrix::trace() const { return entries.diagonal().real().sum(); }

bool TruncatedDensityMatrix::is_hermitian(double tol) const {
    return (entries - entries.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double TruncatedDensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(entries, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

TruncatedDensityMatrix truncated_density(const MeasurementModel &m, Index truncation) {
    if (truncation < 1) throw Error(ErrorCode::kInvalidArgument, "truncation must be >= 1");
    const int dim = m.system_dim();
    TruncatedDensityMatrix rho;
    rho.truncation = truncation;
    rho.entries = ComplexMatrix::Zero(dim, dim);
    rho.log_abs = Eigen::MatrixXd::Constant(dim, dim, -std::numeric_limits<double>::infinity());
    const auto &s = m.amplitudes();
    const auto &d = m.devices();
    for (int i = 0; i < dim; ++i) {
        // Unit device factors: <d_i|d_i> is exactly one, so the diagonal does not depend on N.
        const double p = std::norm(s[static_cast<std::size_t>(i)]);
        rho.entries(i, i) = p;
        rho.log_abs(i, i) = p > 0.0 ? std::log(p) : -std::numeric_limits<double>::infinity();
        for (int j = i + 1; j < dim; ++j) {
            const Complex coeff = s[static_cast<std::size_t>(i)] * std::conj(s[static_cast<std::size_t>(j)]);
            if (coeff == Complex(0.0)) continue;
            const LogComplex overlap =
                truncated_overlap_log(d[static_cast<std::size_t>(j)], d[static_cast<std::size_t>(i)], truncation);
            if (overlap.is_zero()) continue;
            const LogComplex lc = LogComplex::from(coeff);
            const LogComplex entry{overlap.log_modulus + lc.log_modulus, overlap.phase + lc.phase};
            rho.entries(i, j) = entry.value();
            rho.entries(j, i) = std::conj(rho.entries(i, j));
            rho.log_abs(i, j) = entry.log_modulus;
            rho.log_abs(j, i) = entry.log_modulus;
        }
    }
    return rho;
}

namespace {

std::optional<Index> pair_horizon(const ProductState &di, const ProductState &dj, double log_start, double log_eps,
                                  Index scan_limit) {
    if (log_start < log_eps) return Index{1};
    const Index span = std::max(di.prefix_length(), dj.prefix_length());
    double log_value = log_start;
    const bool constant = di.has_constant_tail() && dj.has_constant_tail();
    const Index explicit_end = constant ? span : scan_limit;
    for (Index n = 1; n <= explicit_end; ++n) {
        const double r = std::abs(factor_overlap(dj, di, n));
        if (r == 0.0) return n;
        log_value += std::log(r);
        if (log_value < log_eps) return n;
    }
    if (!constant) return std::nullopt;

    const double r = std::abs(inner(tail_limit(dj.tail()), tail_limit(di.tail())));
    if (r == 0.0) return span + 1;
    if (r >= 1.0) return std::nullopt;
    const double log_r = std::log(r);
    // Smallest k >= 1 with log_value + k log_r < log_eps, corrected for rounding of the quotient.
    Index k = std::max<Index>(1, static_cast<Index>(std::floor((log_eps - log_value) / log_r)));
    while (k > 1 && log_value + static_cast<double>(k - 1) * log_r < log_eps) --k;
    while (!(log_value + static_cast<double>(k) * log_r < log_eps)) ++k;
    return span + k;
}

}  // namespace

HorizonMap decoherence_horizon(const MeasurementModel &m, double eps, Index scan_limit) {
    if (!(eps > 0.0)) throw Error(ErrorCode::kInvalidArgument, "eps must be positive");
    HorizonMap out;
    const double log_eps = std::log(eps);
    const auto &s = m.amplitudes();
    for (int i = 0; i < m.system_dim(); ++i) {
        for (int j = i + 1; j < m.system_dim(); ++j) {
            const double mod = std::abs(s[static_cast<std::size_t>(i)]) * std::abs(s[static_cast<std::size_t>(j)]);
            const double log_start = mod > 0.0 ? std::log(mod) : -std::numeric_limits<double>::infinity();
            out[{i, j}] = pair_horizon(m.devices()[static_cast<std::size_t>(i)],
                                       m.devices()[static_cast<std::size_t>(j)], log_start, log_eps, scan_limit);
        }
    }
    return out;
}

int sample_outcome(const MeasurementModel &m, std::mt19937_64 &rng) {
    // 53 random mantissa bits give u uniform on [0, 1) independent of the library's distributions.
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    double cumulative = 0.0;
    int last_possible = 0;
    for (int i = 0; i < m.system_dim(); ++i) {
        const double p = std::norm(m.amplitudes()[static_cast<std::size_t>(i)]);
        if (p == 0.0) continue;
        last_possible = i;
        cumulative += p;
        if (u < cumulative) return i;
    }
    return last_possible;
}

int sample_outcome(const MeasurementModel &m, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return sample_outcome(m, rng);
}

std::vector<Index> sample_counts(const MeasurementModel &m, Index shots, std::uint64_t seed) {
    if (shots < 0) throw Error(ErrorCode::kInvalidArgument, "shots must be >= 0");
    std::mt19937_64 rng(seed);
    std::vector<Index> counts(static_cast<std::size_t>(m.system_dim()), 0);
    for (Index k = 0; k < shots; ++k) ++counts[static_cast<std::size_t>(sample_outcome(m, rng))];
    return counts;
}

MeasurementModel collapse(const MeasurementModel &m, int outcome) {
    if (outcome < 0 || outcome >= m.system_dim()) {
        throw Error(ErrorCode::kIndexOutOfRange, "outcome index out of range", std::to_string(outcome));
    }
    std::vector<Complex> s(static_cast<std::size_t>(m.system_dim()), 0.0);
    s[static_cast<std::size_t>(outcome)] = 1.0;
    return MeasurementModel(std::move(s), m.devices(), m.ready_state());
}

}  // namespace sectorsim
