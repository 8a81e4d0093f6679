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

#pragma once

#include <cmath>
#include <limits>

#include "sectorsim/core_model.h"

namespace sectorsim {

/// z held as (ln|z|, arg z). An exact zero has log_modulus == -inf.
struct LogComplex {
    double log_modulus = 0.0;
    double phase = 0.0;

    bool is_zero() const { return log_modulus == -std::numeric_limits<double>::infinity(); }
    double log10_modulus() const { return log_modulus / M_LN10; }
    Complex value() const;

    static LogComplex zero() { return {-std::numeric_limits<double>::infinity(), 0.0}; }
    static LogComplex from(Complex z);
};

/// ln z for z near 1 without the cancellation of log(|z|).
LogComplex log_of(Complex z);

/// Sum of LogComplex terms, computed relative to the largest modulus.
LogComplex log_sum(const std::vector<LogComplex> &terms);

/**
 * Running product of complex factors. The first kDirectLimit factors are
 * multiplied directly; after that (or earlier, if the running value leaves
 * the comfortable double range) the product is carried as log-modulus plus
 * phase so that values like 2^-N/2 at N in the thousands stay exact in log
 * form. One exact zero factor pins the product at zero.
 */
class ProductAccumulator {
   public:
    static constexpr Index kDirectLimit = 64;

    void multiply(Complex z);

    Index count() const { return count_; }
    bool is_zero() const { return zero_; }
    bool in_log_mode() const { return log_mode_; }
    Complex value() const;
    LogComplex log_value() const;

   private:
    void switch_to_log();

    Index count_ = 0;
    bool zero_ = false;
    bool log_mode_ = false;
    Complex direct_{1.0, 0.0};
    double log_modulus_ = 0.0;
    double phase_ = 0.0;
};

/// Neumaier-compensated running sum.
class CompensatedSum {
   public:
    void add(double x);
    double value() const { return sum_ + compensation_; }

   private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

}  // namespace sectorsim
