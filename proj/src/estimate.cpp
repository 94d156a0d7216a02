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

#include "qoot/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "qoot/error.hpp"

namespace qoot {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
// Rounds per summation block. Blocks are summed independently and combined
// in index order, which fixes the floating-point result for any thread count.
constexpr std::uint64_t kBlockRounds = 4096;

std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// SplitMix64 stream.
class Stream {
   public:
    explicit Stream(std::uint64_t seed) : state_(seed) {}

    // Uniform in [0, 1) with 53 random bits.
    double uniform() {
        state_ += kGolden;
        return static_cast<double>(mix(state_) >> 11) * 0x1.0p-53;
    }

   private:
    std::uint64_t state_;
};

// Neumaier compensated sum.
struct Sum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            carry += (sum - t) + x;
        } else {
            carry += (x - t) + sum;
        }
        sum = t;
    }
    double value() const { return sum + carry; }
};

struct TermOutcome {
    double weight;         // gamma * sgn(c_i)
    double cumulative;     // P(term index <= i)
    double expectation;    // Tr[sigma O]
    double acceptance;     // Tr[sigma]
    std::vector<double> born_cumulative;
};

struct Prepared {
    std::vector<TermOutcome> terms;
    std::vector<double> eigenvalues;
    // Exact per-round mean; squares are accumulated around it to avoid
    // cancellation in the variance.
    double shift = 0.0;
};

ComplexMatrix round_state(const ExperimentPlan &plan, const QpdTerm &term) {
    if (plan.protocol == Protocol::kPre) return plan.channel.apply(term.apply(plan.state));
    return term.apply(plan.channel.apply(plan.state));
}

Prepared prepare(const ExperimentPlan &plan) {
    const double gamma = plan.qpd.gamma();
    const auto probs = plan.qpd.probabilities();
    const auto &eig = plan.observable.eig();
    Prepared out{{}, eig.values};
    double cumulative = 0.0;
    for (std::size_t i = 0; i < plan.qpd.terms.size(); ++i) {
        const auto &term = plan.qpd.terms[i];
        const auto sigma = round_state(plan, term);
        TermOutcome t;
        t.weight = term.coefficient < 0 ? -gamma : gamma;
        cumulative += probs[i];
        t.cumulative = cumulative;
        t.expectation = (sigma * plan.observable.matrix()).trace().real();
        t.acceptance = std::clamp(sigma.trace().real(), 0.0, 1.0);
        double born = 0.0;
        for (std::size_t k = 0; k < eig.size(); ++k) {
            const auto v = sigma.apply(eig.vectors[k]);
            Complex overlap = 0.0;
            for (std::size_t r = 0; r < v.size(); ++r) overlap += std::conj(eig.vectors[k][r]) * v[r];
            born += std::max(0.0, overlap.real());
            t.born_cumulative.push_back(born);
        }
        out.terms.push_back(std::move(t));
    }
    // Guard the last bucket against rounding in the running sums.
    if (!out.terms.empty()) out.terms.back().cumulative = 1.0;
    for (std::size_t i = 0; i < out.terms.size(); ++i) {
        out.shift += probs[i] * out.terms[i].weight * out.terms[i].expectation;
    }
    return out;
}

double one_round(const Prepared &p, EstimatorMode mode, Stream &rng) {
    const double u = rng.uniform();
    std::size_t i = 0;
    while (i + 1 < p.terms.size() && u >= p.terms[i].cumulative) ++i;
    const auto &t = p.terms[i];
    if (mode == EstimatorMode::kExpectation) return t.weight * t.expectation;
    if (rng.uniform() >= t.acceptance) return 0.0;
    const double total = t.born_cumulative.back();
    const double v = rng.uniform() * total;
    std::size_t k = 0;
    while (k + 1 < t.born_cumulative.size() && v >= t.born_cumulative[k]) ++k;
    return t.weight * p.eigenvalues[k];
}

struct BlockSums {
    Sum values;
    Sum squares;
};

BlockSums run_block(const Prepared &p, const ExperimentPlan &plan, std::uint64_t block) {
    BlockSums out;
    const std::uint64_t begin = block * kBlockRounds;
    const std::uint64_t end = std::min(plan.n_rounds, begin + kBlockRounds);
    for (std::uint64_t j = begin; j < end; ++j) {
        Stream rng(derive_seed(plan.seed, j));
        const double x = one_round(p, plan.mode, rng);
        out.values.add(x);
        out.squares.add((x - p.shift) * (x - p.shift));
    }
    return out;
}

// Calls fn(i) for i in [0, n) across up to `threads` workers.
template <typename Fn>
void parallel_for(std::uint64_t n, unsigned threads, Fn &&fn) {
    const unsigned workers =
        static_cast<unsigned>(std::min<std::uint64_t>(std::max(1u, threads), n));
    if (workers <= 1) {
        for (std::uint64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::uint64_t i = w; i < n; i += workers) fn(i);
        });
    }
}

double expectation(const ComplexMatrix &rho, const Observable &o) {
    return (rho * o.matrix()).trace().real();
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return mix(mix(seed) ^ (index * kGolden + kGolden));
}

std::uint64_t hoeffding_rounds(double gamma, double o_norm, double eps, double delta) {
    if (!(gamma > 0 && o_norm >= 0 && eps > 0 && delta > 0 && delta < 1)) {
        throw Error(ErrorCode::kInvalidArgument,
                    "hoeffding_rounds needs gamma > 0, o_norm >= 0, eps > 0, 0 < delta < 1");
    }
    const double n = 2.0 * gamma * gamma * o_norm * o_norm * std::log(2.0 / delta) / (eps * eps);
    return static_cast<std::uint64_t>(std::ceil(n));
}

void validate(const ExperimentPlan &plan) {
    const std::size_t d = plan.channel.dim();
    if (plan.observable.dim() != d || plan.state.dim() != d || plan.qpd.dim != d) {
        throw Error(ErrorCode::kDimensionMismatch, "plan components have different dimensions");
    }
    if (plan.n_rounds == 0) {
        throw Error(ErrorCode::kInvalidArgument, "n_rounds must be positive");
    }
    if (plan.qpd.terms.empty()) {
        throw Error(ErrorCode::kInvalidArgument, "decomposition has no terms");
    }
    if (!is_hermitian(plan.state)) {
        throw Error(ErrorCode::kInvalidArgument, "state is not Hermitian");
    }
    if (std::abs(plan.state.trace() - Complex(1.0)) > 1e-10) {
        throw Error(ErrorCode::kInvalidArgument, "state trace must be 1");
    }
    if (hermitian_eig((plan.state + plan.state.adjoint()) * 0.5).values.front() < -1e-10) {
        throw Error(ErrorCode::kInvalidArgument, "state is not positive semidefinite");
    }
}

ExperimentPlan make_plan(Protocol protocol, Channel channel, Observable observable,
                         ComplexMatrix state, std::uint64_t n_rounds, std::uint64_t seed,
                         EstimatorMode mode, const RecoveryOptions &options) {
    const auto recovery = protocol == Protocol::kPre ? pre_process_map(channel, observable, options)
                                                     : post_process_map(channel, observable, options);
    auto qpd = decompose(recovery.map);
    const double err = reconstruction_error(qpd, recovery.map);
    if (!(err <= 1e-9)) {
        throw Error(ErrorCode::kInvalidArgument,
                    "decomposition does not reproduce the recovery map (error " +
                        std::to_string(err) + ")");
    }
    ExperimentPlan plan{protocol,   std::move(channel), std::move(observable), std::move(state),
                        std::move(qpd), n_rounds,       seed,                  mode};
    validate(plan);
    return plan;
}

EstimateReport run(const ExperimentPlan &plan, unsigned threads) {
    validate(plan);
    const auto prepared = prepare(plan);
    const std::uint64_t blocks = (plan.n_rounds + kBlockRounds - 1) / kBlockRounds;
    std::vector<BlockSums> sums(blocks);
    parallel_for(blocks, threads,
                 [&](std::uint64_t b) { sums[b] = run_block(prepared, plan, b); });
    Sum total, squares;
    for (const auto &b : sums) {
        total.add(b.values.value());
        squares.add(b.squares.value());
    }
    const double n = static_cast<double>(plan.n_rounds);
    const double mean = total.value() / n;
    double var = 0.0;
    const double offset = mean - prepared.shift;
    if (plan.n_rounds > 1) {
        var = std::max(0.0, (squares.value() - n * offset * offset) / (n - 1.0));
    }
    return {mean,
            expectation(plan.state, plan.observable),
            expectation(plan.channel.apply(plan.state), plan.observable),
            plan.qpd.gamma(),
            plan.n_rounds,
            std::sqrt(var),
            plan.seed,
            plan.mode};
}

double analytic_mean(const ExperimentPlan &plan) {
    validate(plan);
    const double gamma = plan.qpd.gamma();
    const auto probs = plan.qpd.probabilities();
    Sum total;
    for (std::size_t i = 0; i < plan.qpd.terms.size(); ++i) {
        const auto &term = plan.qpd.terms[i];
        const double sign = term.coefficient < 0 ? -1.0 : 1.0;
        total.add(probs[i] * sign * gamma * expectation(round_state(plan, term), plan.observable));
    }
    return total.value();
}

BiasReport bias_check(const ExperimentPlan &plan, std::uint64_t n_repeats, double eps,
                      unsigned threads) {
    if (n_repeats < 2) {
        throw Error(ErrorCode::kInvalidArgument, "bias_check needs at least 2 repeats");
    }
    BiasReport out;
    out.estimates.resize(n_repeats);
    parallel_for(n_repeats, threads, [&](std::uint64_t r) {
        ExperimentPlan p = plan;
        p.seed = derive_seed(plan.seed, r);
        out.estimates[r] = run(p, 1).estimate;
    });
    out.exact_noiseless = expectation(plan.state, plan.observable);
    const double n = static_cast<double>(n_repeats);
    Sum total;
    for (double e : out.estimates) total.add(e);
    out.mean = total.value() / n;
    Sum dev;
    std::uint64_t covered = 0;
    for (double e : out.estimates) {
        dev.add((e - out.mean) * (e - out.mean));
        if (std::abs(e - out.exact_noiseless) <= eps) ++covered;
    }
    out.variance = dev.value() / (n - 1.0);
    out.standard_error = std::sqrt(out.variance / n);
    out.coverage = static_cast<double>(covered) / n;
    double se = out.standard_error;
    if (plan.mode == EstimatorMode::kExpectation) se = std::max(se, 1e-12);
    out.within_four_se = std::abs(out.mean - out.exact_noiseless) <= 4.0 * se;
    return out;
}

const char *to_string(EstimatorMode m) {
    return m == EstimatorMode::kShot ? "shot" : "expectation";
}

}  // namespace qoot
