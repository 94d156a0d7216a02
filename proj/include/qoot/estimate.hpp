// Copyright 2026 The qoot Authors
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

// Monte-Carlo simulation of quasi-probability error mitigation.
//
// Each round draws a term i with probability |c_i| / gamma, applies its
// operation F_i together with the noise, measures O and records
// gamma * sgn(c_i) * outcome. The mean over rounds is an unbiased estimate of
// Tr[rho O] whenever the decomposed map satisfies its recovery property.
//
// Randomness: round j of a run with seed s draws from the stream
// mix(s, j), so any subset of rounds can be replayed independently and the
// result does not depend on the number of worker threads.

#ifndef QOOT_ESTIMATE_HPP_
#define QOOT_ESTIMATE_HPP_

#include <cstdint>
#include <vector>

#include "qoot/channel.hpp"
#include "qoot/qpd.hpp"
#include "qoot/recovery.hpp"

namespace qoot {

inline constexpr std::uint64_t kDefaultSeed = 20240917;

enum class EstimatorMode {
    /// Record Tr[sigma O] exactly; only the term choice is random.
    kExpectation,
    /// Accept with probability Tr[sigma], then sample an eigenvalue of O with
    /// Born weights; record 0 on rejection.
    kShot,
};

struct ExperimentPlan {
    Protocol protocol;
    Channel channel;
    Observable observable;
    ComplexMatrix state;
    /// Decomposition of the Schrodinger-picture recovery map.
    Qpd qpd;
    std::uint64_t n_rounds;
    std::uint64_t seed = kDefaultSeed;
    EstimatorMode mode = EstimatorMode::kExpectation;
};

/// Builds a plan by solving for the recovery map and decomposing it. Throws
/// whatever the recovery solver throws, and kInvalidArgument if the
/// decomposition does not reproduce the map to 1e-9.
ExperimentPlan make_plan(Protocol protocol, Channel channel, Observable observable,
                         ComplexMatrix state, std::uint64_t n_rounds,
                         std::uint64_t seed = kDefaultSeed,
                         EstimatorMode mode = EstimatorMode::kExpectation,
                         const RecoveryOptions &options = {});

/// Throws kInvalidArgument unless the state is PSD (eigenvalues >= -1e-10)
/// with unit trace, dimensions agree and n_rounds > 0.
void validate(const ExperimentPlan &plan);

struct EstimateReport {
    double estimate;
    /// Tr[rho O].
    double exact_noiseless;
    /// Tr[E(rho) O], the unmitigated value.
    double exact_noisy;
    double gamma;
    std::uint64_t n_rounds;
    /// Sample standard deviation of the per-round values.
    double empirical_std;
    std::uint64_t seed;
    EstimatorMode mode;
};

/// N = ceil(2 gamma^2 o_norm^2 ln(2 / delta) / eps^2): two-sided Hoeffding for
/// per-round values in [-gamma o_norm, gamma o_norm].
std::uint64_t hoeffding_rounds(double gamma, double o_norm, double eps, double delta);

/// Runs the estimator. The result is bit-identical for any `threads` >= 1.
EstimateReport run(const ExperimentPlan &plan, unsigned threads = 1);

/// Exact per-round mean sum_i p_i sgn(c_i) gamma Tr[sigma_i O], no sampling.
double analytic_mean(const ExperimentPlan &plan);

struct BiasReport {
    std::vector<double> estimates;
    double mean;
    double standard_error;
    /// Sample variance of the estimates.
    double variance;
    /// Fraction of estimates within +-eps of exact_noiseless.
    double coverage;
    double exact_noiseless;
    /// |mean - exact| <= 4 standard errors. In expectation mode a standard
    /// error below 1e-12 counts as 1e-12 so exact plans are not rejected for
    /// rounding noise.
    bool within_four_se;
};

/// Repeats `run` with seeds derive_seed(plan.seed, r), r = 0..n_repeats-1.
BiasReport bias_check(const ExperimentPlan &plan, std::uint64_t n_repeats, double eps,
                      unsigned threads = 1);

/// Seed of substream `index` derived from `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

const char *to_string(EstimatorMode m);

}  // namespace qoot

#endif  // QOOT_ESTIMATE_HPP_
