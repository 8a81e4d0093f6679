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

#include "sectorsim/log_product.h"

#include <algorithm>

namespace sectorsim {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
// Leave the direct mode well before under/overflow.
constexpr double kDirectFloor = 1e-250;
constexpr double kDirectCeiling = 1e250;

double wrap_phase(double phase) { return std::remainder(phase, kTwoPi); }

}  // namespace

Complex LogComplex::value() const {
    if (is_zero()) return 0.0;
    return std::polar(std::exp(log_modulus), phase);
}

LogComplex LogComplex::from(Complex z) {
    if (z == Complex(0.0)) return zero();
    return {std::log(std::abs(z)), std::arg(z)};
}

LogComplex log_of(Complex z) {
    if (z == Complex(0.0)) return LogComplex::zero();
    const Complex w = z - 1.0;
    if (std::abs(w) < 0.5) {
        return {0.5 * std::log1p(2.0 * w.real() + std::norm(w)), std::arg(z)};
    }
    return LogComplex::from(z);
}

LogComplex log_sum(const std::vector<LogComplex> &terms) {
    double top = -std::numeric_limits<double>::infinity();
    for (const auto &t : terms) top = std::max(top, t.log_modulus);
    if (top == -std::numeric_limits<double>::infinity()) return LogComplex::zero();
    Complex scaled = 0.0;
    for (const auto &t : terms) {
        if (!t.is_zero()) scaled += std::polar(std::exp(t.log_modulus - top), t.phase);
    }
    if (scaled == Complex(0.0)) return LogComplex::zero();
    return {top + std::log(std::abs(scaled)), std::arg(scaled)};
}

void ProductAccumulator::multiply(Complex z) {
    ++count_;
    if (zero_) return;
    if (z == Complex(0.0)) {
        zero_ = true;
        return;
    }
    if (!log_mode_ && count_ > kDirectLimit) switch_to_log();
    if (log_mode_) {
        const LogComplex lz = log_of(z);
        log_modulus_ += lz.log_modulus;
        phase_ = wrap_phase(phase_ + lz.phase);
        return;
    }
    const Complex next = direct_ * z;
    const double m = std::abs(next);
    if (m >= kDirectFloor && m <= kDirectCeiling) {
        direct_ = next;
    } else {
        switch_to_log();
        const LogComplex lz = log_of(z);
        log_modulus_ += lz.log_modulus;
        phase_ = wrap_phase(phase_ + lz.phase);
    }
}

void ProductAccumulator::switch_to_log() {
    log_mode_ = true;
    log_modulus_ = std::log(std::abs(direct_));
    phase_ = std::arg(direct_);
}

Complex ProductAccumulator::value() const {
    if (zero_) return 0.0;
    if (!log_mode_) return direct_;
    return std::polar(std::exp(log_modulus_), phase_);
}

LogComplex ProductAccumulator::log_value() const {
    if (zero_) return LogComplex::zero();
    if (!log_mode_) return LogComplex::from(direct_);
    return {log_modulus_, phase_};
}

void CompensatedSum::add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
        compensation_ += (sum_ - t) + x;
    } else {
        compensation_ += (x - t) + sum_;
    }
    sum_ = t;
}

}  // namespace sectorsim
