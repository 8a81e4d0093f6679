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

#include "sectorsim/sectors.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sectorsim/errors.h"
#include "sectorsim/overlaps.h"

namespace sectorsim {

namespace {

constexpr Index kCustomScanTerms = 100000;
constexpr Index kMaxWitnessIndex = Index{1} << 52;

const ParametricFamily *family_of(const ProductState &s) { return std::get_if<ParametricFamily>(&s.tail()); }

double sector_term(const ProductState &a, const ProductState &b, Index n) {
    return std::abs(factor_overlap(a, b, n) - 1.0);
}

/// ||factor(n) - limit||; zero for constant tails.
double tail_distance(const ProductState &s, Index n) {
    const ParametricFamily *f = family_of(s);
    return f ? f->distance_from_base(n) : 0.0;
}

/// | ||factor(n)||^2 - 1 | along the tail, for unit limits.
double tail_norm_defect(const ProductState &s, Index n) {
    const ParametricFamily *f = family_of(s);
    if (!f || f->mode() == FamilyMode::kRotation) return 0.0;
    const double d = f->deviation(n);
    return std::abs(2.0 * d + d * d);
}

/// Smallest index >= start (up to a doubling search) at which `ok` holds; `ok` is assumed to
/// stay true afterwards. Returns nullopt when no such index below kMaxWitnessIndex was found.
template <typename Pred>
std::optional<Index> first_index_where(Index start, Pred ok) {
    if (ok(start)) return start;
    Index lo = start;
    Index hi = std::max<Index>(start * 2, start + 1);
    while (!ok(hi)) {
        lo = hi;
        if (hi > kMaxWitnessIndex / 2) return std::nullopt;
        hi *= 2;
    }
    while (hi - lo > 1) {
        const Index mid = lo + (hi - lo) / 2;
        (ok(mid) ? hi : lo) = mid;
    }
    return hi;
}

SectorVerdict limit_gap_verdict(const ProductState &a, const ProductState &b, Index span, double c,
                                SectorCertificate cert) {
    SectorVerdict v;
    const auto *fa = family_of(a);
    const auto *fb = family_of(b);
    const bool custom = (fa && fa->law().cls() == DeviationClass::kCustomCertified) ||
                        (fb && fb->law().cls() == DeviationClass::kCustomCertified);
    if (custom && !((!fa || fa->law().summable()) && (!fb || fb->law().summable()))) {
        cert.note = "custom tail without a summability certificate";
        v.certificate = std::move(cert);
        return v;
    }
    // |<a_n|b_n> - <La|Lb>| <= da + db + da db, so the term stays above c/2 once that is <= c/2.
    const auto close_enough = [&](Index n) {
        const double da = tail_distance(a, n);
        const double db = tail_distance(b, n);
        return da + db + da * db <= 0.5 * c;
    };
    const std::optional<Index> from = (!fa && !fb) ? std::optional<Index>(span + 1)
                                                   : first_index_where(span + 1, close_enough);
    if (!from) {
        cert.note = "tail limits differ but no witness index was found";
        v.certificate = std::move(cert);
        return v;
    }
    v.kind = SectorKind::kDifferentSector;
    cert.comparison = "limit-gap";
    cert.witness_from_index = *from;
    cert.lower_bound_exponent = 0.0;
    cert.lower_bound_coefficient = (!fa && !fb) ? c * (1.0 - 1e-12) : 0.5 * c;
    v.certificate = std::move(cert);
    return v;
}

}  // namespace

std::string_view sequence_kind_name(SequenceKind kind) {
    switch (kind) {
        case SequenceKind::kNotConvergent: return "NotConvergentSequence";
        case SequenceKind::kConvergent: return "ConvergentSequence";
        case SequenceKind::kNonTrivialConvergent: return "NonTrivialConvergentSequence";
    }
    return "Unknown";
}

std::string_view sector_kind_name(SectorKind kind) {
    switch (kind) {
        case SectorKind::kSameSector: return "SameSector";
        case SectorKind::kDifferentSector: return "DifferentSector";
        case SectorKind::kInconclusive: return "Inconclusive";
    }
    return "Unknown";
}

SequenceClass classify_sequence(const ProductState &s) {
    SequenceClass out;
    auto &ev = out.evidence;
    bool zero_prefix = false;
    for (const auto &f : s.prefix()) {
        const double n = f.norm();
        ev.prefix_norm_product *= n;
        ev.series_partial_sum += std::abs(n - 1.0);
        zero_prefix = zero_prefix || n == 0.0;
    }
    ev.terms_examined = s.prefix_length();

    // Classify assuming nonzero prefix norms; a zero factor then forces the product to 0.
    SequenceKind tail_kind = SequenceKind::kNonTrivialConvergent;
    if (const auto *c = std::get_if<ConstantFactor>(&s.tail())) {
        const double n = c->vector.norm();
        ev.tail_norm_limit = n;
        ev.test = "constant-tail-norm";
        if (std::abs(n - 1.0) <= kUnitTolerance) {
            tail_kind = SequenceKind::kNonTrivialConvergent;
        } else if (n < 1.0) {
            tail_kind = SequenceKind::kConvergent;
        } else {
            tail_kind = SequenceKind::kNotConvergent;
        }
    } else {
        const auto &family = std::get<ParametricFamily>(s.tail());
        const DeviationLaw &law = family.law();
        ev.tail_norm_limit = 1.0;
        if (family.mode() == FamilyMode::kRotation) {
            ev.test = "rotation-family-unit-norms";
        } else if (law.cls() != DeviationClass::kCustomCertified) {
            ev.test = std::string(deviation_class_name(law.cls())) + "-series-test";
            if (law.summable()) {
                tail_kind = SequenceKind::kNonTrivialConvergent;
            } else {
                // sum a n^-p diverges for p <= 1; the norm product diverges or vanishes with the sign of a.
                tail_kind = law.amplitude() > 0.0 ? SequenceKind::kNotConvergent : SequenceKind::kConvergent;
            }
        } else {
            ev.test = "custom-numeric-scan";
            ev.conclusive = false;
            CompensatedSum total;
            double first_half = 0.0;
            const Index start = s.prefix_length() + 1;
            for (Index n = start; n < start + kCustomScanTerms; ++n) {
                total.add(std::abs(family.deviation(n)));
                if (n == start + kCustomScanTerms / 2) first_half = total.value();
            }
            ev.series_partial_sum += total.value();
            ev.terms_examined += kCustomScanTerms;
            const double late = total.value() - first_half;
            const double last = family.deviation(start + kCustomScanTerms - 1);
            if (law.summable() || late < 1e-6) {
                tail_kind = SequenceKind::kNonTrivialConvergent;
            } else {
                tail_kind = last > 0.0 ? SequenceKind::kNotConvergent : SequenceKind::kConvergent;
            }
        }
    }
    if (zero_prefix) {
        out.kind = SequenceKind::kConvergent;
        ev.test += "+zero-prefix-factor";
    } else {
        out.kind = tail_kind;
    }
    return out;
}

SectorVerdict same_sector(const ProductState &a, const ProductState &b) {
    require_same_shape(a, b);
    if (!classify_sequence(a).is_c0_sequence() || !classify_sequence(b).is_c0_sequence()) {
        throw Error(ErrorCode::kPreconditionViolated, "sector test needs two non-trivial convergent sequences",
                    "'" + a.label() + "' / '" + b.label() + "'");
    }

    SectorCertificate cert;
    const Index span = std::max(a.prefix_length(), b.prefix_length());
    for (Index n = 1; n <= span; ++n) {
        if (!(a.factor(n) == b.factor(n))) cert.differing_indices.push_back(n);
        cert.prefix_series_sum += sector_term(a, b, n);
    }
    const double c = std::abs(inner(tail_limit(a.tail()), tail_limit(b.tail())) - 1.0);
    cert.limit_term = c;

    SectorVerdict v;
    if (c > kSectorGapTolerance) return limit_gap_verdict(a, b, span, c, std::move(cert));
    if (c > kSectorZeroTolerance) {
        cert.note = "tail limit term lies between the zero and gap tolerances";
        v.certificate = std::move(cert);
        return v;
    }

    const auto *fa = family_of(a);
    const auto *fb = family_of(b);
    if (!fa && !fb) {
        v.kind = SectorKind::kSameSector;
        cert.comparison = "constant-tails-match";
        v.certificate = std::move(cert);
        return v;
    }
    if (fa && fb && fa->same_family(*fb)) {
        v.kind = SectorKind::kSameSector;
        cert.comparison = "identical-tails";
        v.certificate = std::move(cert);
        return v;
    }
    for (const auto *f : {fa, fb}) {
        if (f && f->law().cls() == DeviationClass::kCustomCertified) {
            cert.note = "custom tail class; no finite criterion";
            v.certificate = std::move(cert);
            return v;
        }
    }

    // With unit limits La == Lb, |<a_n|b_n> - 1| <= 3 (delta_a + delta_b) + O(delta^2), so
    // summable deviation laws on both sides give a convergent comparison series.
    const bool a_ok = !fa || fa->law().summable();
    const bool b_ok = !fb || fb->law().summable();
    if (a_ok && b_ok) {
        v.kind = SectorKind::kSameSector;
        cert.comparison = "eventually-constant";
        for (const auto *f : {fa, fb}) {
            if (!f) continue;
            const DeviationLaw &law = f->law();
            if (law.cls() == DeviationClass::kPSeries) {
                if (cert.comparison != "p-series" || law.exponent() < cert.comparison_parameter) {
                    cert.comparison = "p-series";
                    cert.comparison_parameter = law.exponent();
                }
            } else if (law.cls() == DeviationClass::kGeometric && cert.comparison != "p-series") {
                cert.comparison = "geometric";
                cert.comparison_parameter = std::max(cert.comparison_parameter, law.ratio());
            }
        }
        v.certificate = std::move(cert);
        return v;
    }
    if (a_ok == b_ok) {
        cert.note = "both tails have non-summable deviations";
        v.certificate = std::move(cert);
        return v;
    }

    // Exactly one side (a rotation family, by the precondition) deviates non-summably.
    const ProductState &wide = a_ok ? b : a;
    const ProductState &narrow = a_ok ? a : b;
    const ParametricFamily &family = *family_of(wide);
    const DeviationLaw &law = family.law();
    // 1 - Re<a|b> >= ((d_wide - d_narrow)^2 - |  ||narrow||^2 - 1 |) / 2 and d_wide^2 = 2 delta, so
    // once d_narrow <= d_wide / 2 and the norm defect <= delta / 4 the term is >= delta / 8.
    const auto dominated = [&](Index n) {
        const double delta = family.deviation(n);
        return tail_distance(narrow, n) <= 0.5 * family.distance_from_base(n) &&
               tail_norm_defect(narrow, n) <= 0.25 * delta;
    };
    const Index start = std::max<Index>(span + 1, 2 * std::abs(family.shift()) + 1);
    const std::optional<Index> from = first_index_where(start, dominated);
    if (!from) {
        cert.note = "no witness index for the non-summable deviation";
        v.certificate = std::move(cert);
        return v;
    }
    v.kind = SectorKind::kDifferentSector;
    cert.comparison = "nonsummable-deviation";
    cert.comparison_parameter = law.exponent();
    cert.witness_from_index = *from;
    cert.lower_bound_exponent = law.exponent();
    cert.lower_bound_coefficient =
        law.amplitude() / 8.0 * (family.shift() < 0 ? std::pow(1.5, -law.exponent()) : 1.0);
    v.certificate = std::move(cert);
    return v;
}

bool verify_sector_certificate(const ProductState &a, const ProductState &b, const SectorVerdict &verdict) {
    const SectorCertificate &cert = verdict.certificate;
    const Index span = std::max(a.prefix_length(), b.prefix_length());
    switch (verdict.kind) {
        case SectorKind::kInconclusive: return true;
        case SectorKind::kSameSector: {
            std::vector<Index> differing;
            double sum = 0.0;
            for (Index n = 1; n <= span; ++n) {
                if (!(a.factor(n) == b.factor(n))) differing.push_back(n);
                sum += sector_term(a, b, n);
            }
            if (differing != cert.differing_indices) return false;
            if (std::abs(sum - cert.prefix_series_sum) > 1e-9 * std::max(1.0, sum)) return false;
            if (std::abs(inner(tail_limit(a.tail()), tail_limit(b.tail())) - 1.0) > kSectorZeroTolerance) {
                return false;
            }
            if (cert.comparison == "constant-tails-match") {
                for (Index n = span + 1; n <= span + 16; ++n) {
                    if (sector_term(a, b, n) > kSectorZeroTolerance) return false;
                }
                return true;
            }
            if (cert.comparison == "identical-tails") {
                return family_of(a) && family_of(b) && family_of(a)->same_family(*family_of(b));
            }
            // Comparison-series certificates: every deviation law present must be summable and the
            // sampled terms must respect 3 (delta_a + delta_b) + delta_a delta_b.
            for (const auto *f : {family_of(a), family_of(b)}) {
                if (f && !f->law().summable()) return false;
            }
            for (Index n = span + 1; n <= span + 64; ++n) {
                const double da = family_of(a) ? std::abs(family_of(a)->deviation(n)) : 0.0;
                const double db = family_of(b) ? std::abs(family_of(b)->deviation(n)) : 0.0;
                if (sector_term(a, b, n) > 3.0 * (da + db) + da * db + kSectorZeroTolerance) return false;
            }
            return true;
        }
        case SectorKind::kDifferentSector: {
            if (cert.witness_from_index <= span || cert.lower_bound_coefficient <= 0.0) return false;
            if (cert.lower_bound_exponent > 1.0) return false;  // a summable lower bound proves nothing
            for (Index n = cert.witness_from_index, k = 0; k < 40 && n < kMaxWitnessIndex; ++k) {
                const double bound =
                    cert.lower_bound_coefficient * std::pow(static_cast<double>(n), -cert.lower_bound_exponent);
                if (sector_term(a, b, n) < bound * (1.0 - 1e-9)) return false;
                n = (k < 8) ? n + 1 : n * 2;
            }
            return true;
        }
    }
    return false;
}

ProductState normed_representative(const ProductState &s) {
    for (Index n = 1; n <= s.prefix_length(); ++n) {
        if (s.prefix()[static_cast<std::size_t>(n - 1)].squared_norm() == 0.0) {
            throw Error(ErrorCode::kZeroNormFactor, "factor with zero norm", "index " + std::to_string(n));
        }
    }
    if (const auto *c = std::get_if<ConstantFactor>(&s.tail()); c && c->vector.squared_norm() == 0.0) {
        throw Error(ErrorCode::kZeroNormFactor, "tail factor with zero norm");
    }
    if (!classify_sequence(s).is_c0_sequence()) {
        throw Error(ErrorCode::kPreconditionViolated, "normed representative needs a non-trivial convergent sequence",
                    s.label());
    }
    const auto normalize = [](const FactorVector &f) {
        return f.squared_norm() == 1.0 ? f : f.scaled(1.0 / f.norm());
    };
    std::vector<FactorVector> prefix;
    prefix.reserve(s.prefix().size());
    for (const auto &f : s.prefix()) prefix.push_back(normalize(f));
    if (const auto *c = std::get_if<ConstantFactor>(&s.tail())) {
        return ProductState(std::move(prefix), ConstantFactor{normalize(c->vector)}, s.label());
    }
    const auto &family = std::get<ParametricFamily>(s.tail());
    if (family.mode() == FamilyMode::kRotation) return ProductState(std::move(prefix), family, s.label());
    // (1 + delta) base normalizes to base itself.
    return ProductState(std::move(prefix), ConstantFactor{family.base()}, s.label());
}

ProductState apply_finite_change(const ProductState &s, const std::map<Index, FactorVector> &changes) {
    if (changes.empty()) return s;
    if (changes.begin()->first < 1) {
        throw Error(ErrorCode::kIndexOutOfRange, "factor indices start at 1");
    }
    const Index span = std::max(s.prefix_length(), changes.rbegin()->first);
    std::vector<FactorVector> prefix;
    prefix.reserve(static_cast<std::size_t>(span));
    for (Index n = 1; n <= span; ++n) {
        auto it = changes.find(n);
        if (it == changes.end()) {
            prefix.push_back(s.factor(n));
            continue;
        }
        if (it->second.dim() != s.dim_at(n)) {
            throw Error(ErrorCode::kShapeMismatch, "replacement factor has the wrong dimension",
                        "index " + std::to_string(n));
        }
        prefix.push_back(it->second);
    }
    return ProductState(std::move(prefix), s.tail(), s.label());
}

}  // namespace sectorsim
