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

#include "sectorsim/operators.h"

#include <algorithm>
#include <cmath>

#include "sectorsim/errors.h"
#include "sectorsim/sectors.h"

namespace sectorsim {

namespace {

constexpr int kMaxExponentialDim = 16;

bool finite_matrix(const ComplexMatrix &m) {
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        const Complex z = m.data()[i];
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
}

}  // namespace

double power_iteration_norm(const ComplexMatrix &matrix, double rel_tol) {
    const ComplexMatrix gram = matrix.adjoint() * matrix;
    const Eigen::Index n = gram.rows();
    ComplexVector x(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const double kk = static_cast<double>(k);
        x[k] = Complex(1.0 + 0.37 * kk, 0.11 * kk * kk);
    }
    x.normalize();
    double lambda = 0.0;
    for (int iter = 0; iter < 20000; ++iter) {
        ComplexVector y = gram * x;
        const double ny = y.norm();
        if (ny == 0.0) return 0.0;
        const double next = x.dot(y).real();
        x = y / ny;
        if (iter > 0 && std::abs(next - lambda) <= rel_tol * std::abs(next)) {
            lambda = next;
            break;
        }
        lambda = next;
    }
    return std::sqrt(std::max(0.0, lambda));
}

// ---------------------------------------------------------------------------
// FactorOperator

FactorOperator::FactorOperator(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
    if (matrix_.rows() < 1 || matrix_.rows() != matrix_.cols()) {
        throw Error(ErrorCode::kShapeMismatch, "factor operator must be a non-empty square matrix");
    }
    if (!finite_matrix(matrix_)) throw Error(ErrorCode::kInvalidAmplitude, "non-finite operator entry");
    norm_bound_ = power_iteration_norm(matrix_);
}

FactorOperator FactorOperator::identity(int dim) { return FactorOperator(ComplexMatrix::Identity(dim, dim)); }

bool FactorOperator::is_identity() const { return matrix_ == ComplexMatrix::Identity(dim(), dim()); }

bool FactorOperator::is_hermitian(double tol) const {
    return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool FactorOperator::is_unitary(double tol) const {
    return (matrix_.adjoint() * matrix_ - ComplexMatrix::Identity(dim(), dim())).cwiseAbs().maxCoeff() <= tol;
}

FactorVector FactorOperator::apply(const FactorVector &v) const {
    if (v.dim() != dim()) throw Error(ErrorCode::kShapeMismatch, "operator and vector dimensions differ");
    return FactorVector(matrix_ * v.amplitudes());
}

Complex FactorOperator::expectation(const FactorVector &v) const {
    if (v.dim() != dim()) throw Error(ErrorCode::kShapeMismatch, "operator and vector dimensions differ");
    return v.amplitudes().dot(matrix_ * v.amplitudes());
}

// ---------------------------------------------------------------------------
// FactoredOperator

int OperatorTerm::tail_dim() const {
    if (const auto *id = std::get_if<IdentityOfDim>(&tail)) return id->dim;
    return std::get<ConstantOperator>(tail).op.dim();
}

const FactorOperator *OperatorTerm::op_at(Index n) const {
    if (n < 1) throw Error(ErrorCode::kIndexOutOfRange, "factor indices start at 1");
    if (n <= prefix_length()) return &prefix_ops[static_cast<std::size_t>(n - 1)];
    if (const auto *c = std::get_if<ConstantOperator>(&tail)) return &c->op;
    return nullptr;
}

namespace {

int term_dim_at(const OperatorTerm &term, Index n) {
    return n <= term.prefix_length() ? term.prefix_ops[static_cast<std::size_t>(n - 1)].dim() : term.tail_dim();
}

}  // namespace

FactoredOperator::FactoredOperator(std::vector<OperatorTerm> terms) : terms_(std::move(terms)) {
    if (terms_.empty()) throw Error(ErrorCode::kInvalidArgument, "factored operator needs at least one term");
    Index span = 0;
    for (const auto &t : terms_) {
        if (!std::isfinite(t.coefficient.real()) || !std::isfinite(t.coefficient.imag())) {
            throw Error(ErrorCode::kInvalidAmplitude, "non-finite operator coefficient");
        }
        if (t.tail_dim() < 1) throw Error(ErrorCode::kShapeMismatch, "operator tail dimension must be >= 1");
        span = std::max(span, t.prefix_length());
    }
    const OperatorTerm &first = terms_.front();
    for (const auto &t : terms_) {
        if (t.tail_dim() != first.tail_dim()) {
            throw Error(ErrorCode::kShapeMismatch, "operator terms have different tail dimensions");
        }
        for (Index n = 1; n <= span; ++n) {
            if (term_dim_at(t, n) != term_dim_at(first, n)) {
                throw Error(ErrorCode::kShapeMismatch, "operator terms disagree on a factor dimension",
                            "index " + std::to_string(n));
            }
        }
    }
}

FactoredOperator FactoredOperator::single_site(Index site, const FactorOperator &op, int dim) {
    if (site < 1) throw Error(ErrorCode::kIndexOutOfRange, "factor indices start at 1");
    if (op.dim() != dim) throw Error(ErrorCode::kShapeMismatch, "site operator dimension differs from dim");
    OperatorTerm term;
    term.prefix_ops.assign(static_cast<std::size_t>(site - 1), FactorOperator::identity(dim));
    term.prefix_ops.push_back(op);
    term.tail = IdentityOfDim{dim};
    return FactoredOperator({std::move(term)});
}

FactoredOperator FactoredOperator::every_site(const FactorOperator &op) {
    OperatorTerm term;
    term.tail = ConstantOperator{op};
    return FactoredOperator({std::move(term)});
}

FactoredOperator FactoredOperator::identity(int dim) {
    OperatorTerm term;
    term.tail = IdentityOfDim{dim};
    return FactoredOperator({std::move(term)});
}

bool FactoredOperator::finite_support() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const OperatorTerm &t) { return t.identity_tail(); });
}

double FactoredOperator::norm_bound(Index truncation) const {
    double total = 0.0;
    for (const auto &t : terms_) {
        double log_norm = 0.0;
        for (Index n = 1; n <= truncation; ++n) {
            const FactorOperator *op = t.op_at(n);
            if (!op) continue;
            if (n > t.prefix_length()) {
                log_norm += static_cast<double>(truncation - n + 1) * std::log(op->norm_bound());
                break;
            }
            log_norm += std::log(op->norm_bound());
        }
        total += std::abs(t.coefficient) * std::exp(log_norm);
    }
    return total;
}

void require_same_shape(const FactoredOperator &op, const ProductState &s) {
    for (const auto &t : op.terms()) {
        const Index span = std::max(t.prefix_length(), s.prefix_length());
        for (Index n = 1; n <= span; ++n) {
            if (term_dim_at(t, n) != s.dim_at(n)) {
                throw Error(ErrorCode::kShapeMismatch, "operator and state disagree on a factor dimension",
                            "index " + std::to_string(n));
            }
        }
        if (t.tail_dim() != s.tail_dim()) {
            throw Error(ErrorCode::kShapeMismatch, "operator and state tails have different dimensions");
        }
    }
}

namespace {

TailRule transform_tail(const TailRule &tail, const FactorOperator &op) {
    if (const auto *c = std::get_if<ConstantFactor>(&tail)) return ConstantFactor{op.apply(c->vector)};
    if (!op.is_unitary()) {
        throw Error(ErrorCode::kUnsupportedTail, "parametric tails can only be transformed by unitary factors");
    }
    return std::get<ParametricFamily>(tail).transformed(op.matrix());
}

}  // namespace

CompositeState apply(const FactoredOperator &op, const ProductState &s) {
    require_same_shape(op, s);
    std::vector<CompositeTerm> out;
    out.reserve(op.terms().size());
    for (const auto &t : op.terms()) {
        const Index span = std::max(t.prefix_length(), s.prefix_length());
        std::vector<FactorVector> prefix;
        prefix.reserve(static_cast<std::size_t>(span));
        for (Index n = 1; n <= span; ++n) {
            const FactorOperator *u = t.op_at(n);
            prefix.push_back(u ? u->apply(s.factor(n)) : s.factor(n));
        }
        const auto *tail_op = std::get_if<ConstantOperator>(&t.tail);
        TailRule tail = tail_op ? transform_tail(s.tail(), tail_op->op) : s.tail();
        out.push_back({t.coefficient, ProductState(std::move(prefix), std::move(tail), s.label())});
    }
    return CompositeState(std::move(out));
}

// ---------------------------------------------------------------------------
// Sector action

std::string_view sector_action_kind_name(SectorActionKind kind) {
    switch (kind) {
        case SectorActionKind::kPreservesSector: return "PreservesSector";
        case SectorActionKind::kLeavesSector: return "LeavesSector";
        case SectorActionKind::kInconclusive: return "Inconclusive";
    }
    return "Unknown";
}

namespace {

void require_unit_c0(const ProductState &s) {
    if (!classify_sequence(s).is_c0_sequence()) {
        throw Error(ErrorCode::kPreconditionViolated, "state is not a non-trivial convergent sequence", s.label());
    }
    for (Index n = 1; n <= s.prefix_length(); ++n) {
        if (!s.prefix()[static_cast<std::size_t>(n - 1)].is_unit()) {
            throw Error(ErrorCode::kPreconditionViolated, "state factors must be unit-norm",
                        "index " + std::to_string(n));
        }
    }
    const auto *family = std::get_if<ParametricFamily>(&s.tail());
    if (!tail_limit(s.tail()).is_unit() || (family && family->mode() != FamilyMode::kRotation)) {
        throw Error(ErrorCode::kPreconditionViolated, "state tail factors must be unit-norm");
    }
}

std::vector<Complex> tail_expectations(const FactoredOperator &op, const ProductState &s) {
    const FactorVector &v = tail_limit(s.tail());
    std::vector<Complex> out;
    for (const auto &t : op.terms()) {
        const auto *c = std::get_if<ConstantOperator>(&t.tail);
        out.push_back(c ? c->op.expectation(v) : Complex(1.0));
    }
    return out;
}

}  // namespace

SectorActionVerdict sector_action(const FactoredOperator &op, const ProductState &s) {
    require_same_shape(op, s);
    require_unit_c0(s);
    SectorActionVerdict verdict;
    auto &w = verdict.witness;
    for (const auto &t : op.terms()) w.support_size = std::max(w.support_size, t.prefix_length());
    w.tail_expectations = tail_expectations(op, s);
    if (op.finite_support()) {
        verdict.kind = SectorActionKind::kPreservesSector;
        w.reason = "finite-support";
        return verdict;
    }

    const bool parametric = std::holds_alternative<ParametricFamily>(s.tail());
    bool all_fixed = true;
    for (std::size_t p = 0; p < op.terms().size(); ++p) {
        const OperatorTerm &t = op.terms()[p];
        if (t.coefficient == Complex(0.0)) continue;
        const Complex e = w.tail_expectations[p];
        if (std::abs(e) < 1.0 - kSectorGapTolerance) {
            verdict.kind = SectorActionKind::kLeavesSector;
            w.reason = "tail-deficit";
            w.term_index = static_cast<int>(p);
            w.deficit = std::abs(e - 1.0);
            return verdict;
        }
        bool fixed = std::abs(e - 1.0) <= kOperatorTolerance;
        // Along a parametric tail the deviation terms stay summable only under a unitary tail factor.
        if (fixed && parametric) {
            if (const auto *c = std::get_if<ConstantOperator>(&t.tail)) fixed = c->op.is_unitary();
        }
        all_fixed = all_fixed && fixed;
    }
    if (all_fixed) {
        verdict.kind = SectorActionKind::kPreservesSector;
        w.reason = "fixed-tail";
    }
    return verdict;
}

bool verify_sector_action(const FactoredOperator &op, const ProductState &s, const SectorActionVerdict &verdict) {
    const auto &w = verdict.witness;
    const std::vector<Complex> expectations = tail_expectations(op, s);
    switch (verdict.kind) {
        case SectorActionKind::kInconclusive: return w.reason.empty();
        case SectorActionKind::kPreservesSector:
            if (w.reason == "finite-support") return op.finite_support();
            if (w.reason != "fixed-tail") return false;
            for (std::size_t p = 0; p < expectations.size(); ++p) {
                if (op.terms()[p].coefficient != Complex(0.0) && std::abs(expectations[p] - 1.0) > kOperatorTolerance) {
                    return false;
                }
            }
            return true;
        case SectorActionKind::kLeavesSector: {
            if (w.reason != "tail-deficit" || w.term_index < 0 ||
                static_cast<std::size_t>(w.term_index) >= expectations.size()) {
                return false;
            }
            const Complex e = expectations[static_cast<std::size_t>(w.term_index)];
            return op.terms()[static_cast<std::size_t>(w.term_index)].coefficient != Complex(0.0) &&
                   std::abs(e) < 1.0 - kSectorGapTolerance && std::abs(std::abs(e - 1.0) - w.deficit) <= 1e-15;
        }
    }
    return false;
}

OverlapSweep expectation_sweep(const FactoredOperator &op, const ProductState &s,
                               const std::vector<Index> &truncations) {
    require_same_shape(op, s);
    for (std::size_t k = 0; k < truncations.size(); ++k) {
        if (truncations[k] < 1 || (k > 0 && truncations[k] <= truncations[k - 1])) {
            throw Error(ErrorCode::kInvalidArgument, "truncations must be positive and strictly increasing");
        }
    }
    OverlapSweep sweep;
    sweep.truncations = truncations;
    std::vector<ProductAccumulator> acc(op.terms().size());
    Index n = 0;
    for (Index target : truncations) {
        while (n < target) {
            ++n;
            const FactorVector psi = s.factor(n);
            for (std::size_t p = 0; p < acc.size(); ++p) {
                if (acc[p].is_zero()) {
                    acc[p].multiply(0.0);
                    continue;
                }
                const FactorOperator *u = op.terms()[p].op_at(n);
                acc[p].multiply(u ? u->expectation(psi) : Complex(psi.squared_norm()));
            }
        }
        std::vector<LogComplex> parts;
        Complex direct = 0.0;
        for (std::size_t p = 0; p < acc.size(); ++p) {
            const Complex u = op.terms()[p].coefficient;
            direct += u * acc[p].value();
            if (u == Complex(0.0)) continue;
            const LogComplex term = acc[p].log_value();
            const LogComplex lu = LogComplex::from(u);
            parts.push_back({term.log_modulus + lu.log_modulus, term.phase + lu.phase});
        }
        const LogComplex total = log_sum(parts);
        sweep.values.push_back(target <= ProductAccumulator::kDirectLimit ? direct : total.value());
        sweep.log_modulus.push_back(total.log_modulus);
    }
    return sweep;
}

// ---------------------------------------------------------------------------
// Evolution

ComplexMatrix matrix_exponential(const ComplexMatrix &a) {
    if (a.rows() != a.cols()) throw Error(ErrorCode::kShapeMismatch, "matrix exponential needs a square matrix");
    if (!finite_matrix(a)) throw Error(ErrorCode::kInvalidAmplitude, "non-finite matrix entry");
    const Eigen::Index n = a.rows();
    const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    if (norm1 > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
    const ComplexMatrix scaled = a / std::ldexp(1.0, squarings);
    ComplexMatrix result = ComplexMatrix::Identity(n, n);
    ComplexMatrix term = ComplexMatrix::Identity(n, n);
    for (int k = 1; k <= 30; ++k) {
        term = term * scaled / static_cast<double>(k);
        result += term;
        if (term.cwiseAbs().maxCoeff() <= 1e-18 * result.cwiseAbs().maxCoeff()) break;
    }
    for (int k = 0; k < squarings; ++k) result = result * result;
    return result;
}

EvolutionResult evolve(const FactoredOperator &generator, const ProductState &s, double t, Index truncation) {
    require_same_shape(generator, s);
    if (truncation < 1) throw Error(ErrorCode::kInvalidArgument, "truncation must be >= 1");
    if (!std::isfinite(t)) throw Error(ErrorCode::kInvalidArgument, "evolution time must be finite");

    Index span = s.prefix_length();
    for (const auto &term : generator.terms()) span = std::max(span, term.prefix_length());

    const auto site_generator = [&](Index n) {
        const int d = n <= span ? s.dim_at(n) : s.tail_dim();
        if (d > kMaxExponentialDim) {
            throw Error(ErrorCode::kInvalidArgument, "site exponentials are limited to dimension 16");
        }
        ComplexMatrix g = ComplexMatrix::Zero(d, d);
        for (const auto &term : generator.terms()) {
            // Identity entries carry no local generator.
            const FactorOperator *h = term.op_at(n);
            if (h == nullptr || h->is_identity()) continue;
            g += term.coefficient * h->matrix();
        }
        if ((g - g.adjoint()).cwiseAbs().maxCoeff() > kOperatorTolerance) {
            throw Error(ErrorCode::kNonHermitianGenerator, "site generator is not Hermitian",
                        "index " + std::to_string(n));
        }
        return g;
    };
    const Complex i_t(0.0, t);
    const auto site_unitary = [&](Index n) { return FactorOperator(matrix_exponential(i_t * site_generator(n))); };

    std::vector<FactorOperator> unitaries;
    unitaries.reserve(static_cast<std::size_t>(span));
    for (Index n = 1; n <= span; ++n) unitaries.push_back(site_unitary(n));
    const FactorOperator tail_unitary = site_unitary(span + 1);

    std::vector<FactorVector> prefix;
    prefix.reserve(static_cast<std::size_t>(span));
    for (Index n = 1; n <= span; ++n) prefix.push_back(unitaries[static_cast<std::size_t>(n - 1)].apply(s.factor(n)));
    TailRule tail = tail_unitary.is_identity() ? s.tail() : transform_tail(s.tail(), tail_unitary);

    ProductAccumulator survival;
    for (Index n = 1; n <= truncation && !survival.is_zero(); ++n) {
        const FactorOperator &w = n <= span ? unitaries[static_cast<std::size_t>(n - 1)] : tail_unitary;
        survival.multiply(w.expectation(s.factor(n)));
    }
    return {CompositeState::single(ProductState(std::move(prefix), std::move(tail), s.label())), survival.value(),
            truncation};
}

}  // namespace sectorsim
