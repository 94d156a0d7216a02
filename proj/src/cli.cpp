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

#include "qoot/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "qoot/error.hpp"
#include "qoot/estimate.hpp"
#include "qoot/io.hpp"
#include "qoot/observable_over_time.hpp"
#include "qoot/qpd.hpp"
#include "qoot/recovery.hpp"

namespace qoot::cli {

namespace {

using io::Json;

struct Options {
    std::string channel;
    std::string observable;
    std::string map;
    std::string plan;
    std::string out;
    std::string protocol = "pre";
    std::string solver = "generic";
    std::string extrapolation = "blocks";
    std::string grouping = "sign";
    std::string mode;
    std::string case_name = "gad-x";
    std::vector<double> lambda_pair;
    std::vector<double> probs{0.85, 0.05, 0.04, 0.06};
    double tol = 1e-7;
    double p = 0.7;
    double eps = 0.36;
    double coverage_eps = 0.0;
    std::uint64_t repeats = 0;
    std::optional<std::uint64_t> seed;
    unsigned threads = 0;
};

// A report that carries a rejection: the result is still emitted.
struct Rejection {
    Error error;
    Json result;
};

Json error_json(const Error &e) {
    return {{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
}

RecoveryOptions recovery_options(const Options &o) {
    RecoveryOptions r;
    r.residual_tol = o.tol;
    r.post_solver = io::post_solver_from_string(o.solver);
    r.extrapolation = io::extrapolation_from_string(o.extrapolation);
    if (!o.lambda_pair.empty()) {
        if (o.lambda_pair.size() != 2) {
            throw Error(ErrorCode::kInvalidArgument, "--lambda-pair takes exactly two values");
        }
        r.lambdas = {o.lambda_pair[0], o.lambda_pair[1]};
    }
    return r;
}

Json recovery_options_json(const RecoveryOptions &r) {
    return {{"lambda_pair", {r.lambdas.first, r.lambdas.second}},
            {"tol", r.residual_tol},
            {"solver", r.post_solver == PostSolver::kGeneric  ? "generic"
                       : r.post_solver == PostSolver::kPauli ? "pauli"
                                                              : "clock-shift"},
            {"extrapolation", r.extrapolation == Extrapolation::kBlocks ? "blocks" : "superop"}};
}

unsigned thread_count(const Options &o) {
    if (o.threads > 0) return o.threads;
    return std::max(1u, std::thread::hardware_concurrency());
}

// --seed, then the plan's "seed", then QOOT_SEED, then the built-in default.
std::uint64_t resolve_seed(const Options &o, std::optional<std::uint64_t> plan_seed) {
    if (o.seed) return *o.seed;
    if (plan_seed) return *plan_seed;
    if (const char *env = std::getenv("QOOT_SEED")) {
        char *end = nullptr;
        const auto v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0') {
            throw Error(ErrorCode::kInvalidArgument, "QOOT_SEED must be a non-negative integer");
        }
        return v;
    }
    return kDefaultSeed;
}

Json require_file(const std::string &path, const char *flag) {
    if (path.empty()) throw Error(ErrorCode::kInvalidArgument, std::string(flag) + " is required");
    return io::read_json(path);
}

// Pauli transfer coefficients of a qubit Heisenberg map: row a, column b holds
// Tr[sigma_a M(sigma_b)] / 2.
Json pauli_action(const Channel &heisenberg) {
    const auto ps = pauli::basis();
    Json rows = Json::array();
    for (const auto &a : ps) {
        Json row = Json::array();
        for (const auto &b : ps) row.push_back((a * heisenberg.apply(b)).trace().real() / 2.0);
        rows.push_back(std::move(row));
    }
    return rows;
}

double max_diagonal_deviation(const Channel &heisenberg, const std::array<double, 4> &expected) {
    const auto ps = pauli::basis();
    double worst = 0.0;
    for (std::size_t a = 0; a < 4; ++a) {
        for (std::size_t b = 0; b < 4; ++b) {
            const double v = (ps[a] * heisenberg.apply(ps[b])).trace().real() / 2.0;
            worst = std::max(worst, std::abs(v - (a == b ? expected[a] : 0.0)));
        }
    }
    return worst;
}

Json check_nogo(const Options &o, Json &input) {
    input["channel"] = require_file(o.channel, "--channel");
    input["observable"] = require_file(o.observable, "--observable");
    const auto c = io::channel_from_json(input["channel"]);
    const auto obs = io::observable_from_json(input["observable"]);
    const auto nogo = nogo_check(c, obs);
    const bool anti = anticommutator_condition(c, obs);
    Json result = {{"admissible", nogo.admissible},
                   {"trace_gap", nogo.trace_gap},
                   {"anticommutator_ok", anti}};
    if (!nogo) {
        std::ostringstream os;
        os.precision(17);
        os << "no-go: trace gap " << nogo.trace_gap;
        throw Rejection{Error(ErrorCode::kInadmissiblePair, os.str()), std::move(result)};
    }
    return result;
}

Json recover(const Options &o, Json &input, Protocol protocol) {
    input["channel"] = require_file(o.channel, "--channel");
    input["observable"] = require_file(o.observable, "--observable");
    const auto options = recovery_options(o);
    input["options"] = recovery_options_json(options);
    const auto c = io::channel_from_json(input["channel"]);
    const auto obs = io::observable_from_json(input["observable"]);
    const auto r = protocol == Protocol::kPre ? pre_process_map(c, obs, options)
                                              : post_process_map(c, obs, options);
    return io::recovery_to_json(r);
}

Json qpd(const Options &o, Json &input) {
    input["map"] = require_file(o.map, "--map");
    input["grouping"] = o.grouping;
    const auto m = io::channel_from_json(input["map"]);
    Grouping g = Grouping::kSign;
    if (o.grouping == "eigenvector") {
        g = Grouping::kEigenvector;
    } else if (o.grouping != "sign") {
        throw Error(ErrorCode::kInvalidArgument, "--grouping must be sign or eigenvector");
    }
    const auto q = decompose(m, g);
    auto result = io::qpd_to_json(q);
    result["reconstruction_error"] = reconstruction_error(q, m);
    return result;
}

Json compare(const Options &o, Json &input) {
    input["channel"] = require_file(o.channel, "--channel");
    input["observable"] = require_file(o.observable, "--observable");
    input["protocol"] = o.protocol;
    const auto options = recovery_options(o);
    input["options"] = recovery_options_json(options);
    const auto c = io::channel_from_json(input["channel"]);
    const auto obs = io::observable_from_json(input["observable"]);
    const auto cmp = compare_costs(c, obs, io::protocol_from_string(o.protocol), options);
    Json result = {{"gamma_recovery", cmp.gamma_recovery}, {"gamma_inverse", nullptr}};
    if (cmp.gamma_inverse) {
        result["gamma_inverse"] = *cmp.gamma_inverse;
    } else {
        result["inverse_error"] = cmp.inverse_error;
    }
    result["winner"] = to_string(cmp.winner);
    result["recovery_residual"] = cmp.recovery.residual.primary;
    return result;
}

Json estimate(const Options &o, Json &input) {
    input["plan"] = require_file(o.plan, "--plan");
    const auto spec = io::plan_spec_from_json(input["plan"]);
    const auto seed = resolve_seed(o, spec.seed);
    const auto mode = o.mode.empty() ? spec.mode : io::mode_from_string(o.mode);
    const auto options = recovery_options(o);
    input["seed"] = seed;
    input["mode"] = to_string(mode);
    input["repeats"] = o.repeats;
    input["options"] = recovery_options_json(options);

    auto c = io::channel_from_json(spec.channel);
    auto obs = io::observable_from_json(spec.observable);
    auto rho = io::state_from_json(spec.state);
    auto plan = make_plan(spec.protocol, std::move(c), std::move(obs), std::move(rho), 1, seed,
                          mode, options);
    const double o_norm = operator_norm(plan.observable.matrix());
    if (spec.n_rounds) {
        plan.n_rounds = *spec.n_rounds;
    } else {
        plan.n_rounds =
            hoeffding_rounds(plan.qpd.gamma(), o_norm, spec.hoeffding_eps, spec.hoeffding_delta);
    }
    const unsigned threads = thread_count(o);
    const auto r = run(plan, threads);
    Json result = {{"estimate", r.estimate},
                   {"exact_noiseless", r.exact_noiseless},
                   {"exact_noisy", r.exact_noisy},
                   {"gamma", r.gamma},
                   {"n_rounds", r.n_rounds},
                   {"empirical_std", r.empirical_std},
                   {"seed", r.seed},
                   {"mode", to_string(r.mode)},
                   {"analytic_mean", analytic_mean(plan)}};
    if (o.repeats > 0) {
        const double eps = o.coverage_eps > 0 ? o.coverage_eps
                           : spec.hoeffding_eps > 0 ? spec.hoeffding_eps
                                                    : 0.02;
        const auto b = bias_check(plan, o.repeats, eps, threads);
        result["repeats"] = {{"n", o.repeats},
                             {"eps", eps},
                             {"mean", b.mean},
                             {"standard_error", b.standard_error},
                             {"variance", b.variance},
                             {"coverage", b.coverage},
                             {"within_four_se", b.within_four_se}};
    }
    return result;
}

Json reproduce_gad(const Options &o, Json &input) {
    input["p"] = o.p;
    input["eps"] = o.eps;
    const auto options = recovery_options(o);
    input["options"] = recovery_options_json(options);
    const auto c = channels::gad(o.p, o.eps);
    const Observable x(pauli::X());
    const auto cmp = compare_costs(c, x, Protocol::kPre, options);
    const double s = std::sqrt(1.0 - o.eps);
    const std::array<double, 4> expected{1.0, 1.0 / s, s, 1.0 - o.eps};
    Json result = {{"case", "gad-x"},
                   {"protocol", "pre"},
                   {"action", pauli_action(cmp.recovery.heisenberg)},
                   {"expected_action_diagonal", expected},
                   {"action_max_deviation", max_diagonal_deviation(cmp.recovery.heisenberg, expected)},
                   {"residual",
                    {{"primary", cmp.recovery.residual.primary},
                     {"swapped", cmp.recovery.residual.swapped}}},
                   {"gamma_recovery", cmp.gamma_recovery},
                   {"gamma_recovery_closed_form", 1.0 / s},
                   {"gamma_inverse", nullptr},
                   {"gamma_inverse_closed_form", nullptr},
                   {"winner", to_string(cmp.winner)}};
    if (cmp.gamma_inverse) result["gamma_inverse"] = *cmp.gamma_inverse;
    if (o.eps < 1.0) result["gamma_inverse_closed_form"] = gad_inverse_gamma(o.p, o.eps);
    return result;
}

Json reproduce_pauli(const Options &o, Json &input) {
    if (o.probs.size() != 4) {
        throw Error(ErrorCode::kInvalidArgument, "--probs takes four values");
    }
    const auto &p = o.probs;
    input["probs"] = p;
    const auto options = recovery_options(o);
    input["options"] = recovery_options_json(options);
    const auto c = channels::stochastic_pauli(p[0], p[1], p[2], p[3]);
    const Observable z(pauli::Z());
    const auto cmp = compare_costs(c, z, Protocol::kPost, options);
    const double fz = p[0] - p[1] - p[2] + p[3];
    const std::array<double, 4> expected{1.0, p[0] + p[1] - p[2] - p[3], p[0] - p[1] + p[2] - p[3],
                                         1.0 / fz};
    Json result = {{"case", "pauli-z"},
                   {"protocol", "post"},
                   {"action", pauli_action(cmp.recovery.heisenberg)},
                   {"expected_action_diagonal", expected},
                   {"action_max_deviation", max_diagonal_deviation(cmp.recovery.heisenberg, expected)},
                   {"residual",
                    {{"primary", cmp.recovery.residual.primary},
                     {"swapped", cmp.recovery.residual.swapped}}},
                   {"gamma_recovery", cmp.gamma_recovery},
                   {"gamma_recovery_closed_form", 1.0 / std::abs(fz)},
                   {"gamma_inverse", nullptr},
                   {"winner", to_string(cmp.winner)}};
    if (cmp.gamma_inverse) result["gamma_inverse"] = *cmp.gamma_inverse;
    return result;
}

Json reproduce(const Options &o, Json &input) {
    input["case"] = o.case_name;
    if (o.case_name == "gad-x") return reproduce_gad(o, input);
    if (o.case_name == "pauli-z") return reproduce_pauli(o, input);
    throw Error(ErrorCode::kInvalidArgument, "--case must be gad-x or pauli-z");
}

Json envelope(const std::string &command, Json input) {
    return {{"schema_version", kSchemaVersion},
            {"tool", "qoot"},
            {"tool_version", kToolVersion},
            {"command", command},
            {"input", std::move(input)}};
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Observable-preserving recovery maps and quasi-probability error mitigation"};
    app.require_subcommand(1);
    Options o;

    auto add_pair = [&](CLI::App *s) {
        s->add_option("--channel", o.channel, "channel spec (JSON)");
        s->add_option("--observable", o.observable, "observable spec (JSON)");
    };
    auto add_recovery = [&](CLI::App *s) {
        s->add_option("--lambda-pair", o.lambda_pair, "regularization shifts lambda1 lambda2")
            ->expected(2);
        s->add_option("--tol", o.tol, "maximum accepted recovery residual")
            ->check(CLI::PositiveNumber);
        s->add_option("--solver", o.solver, "post solver: generic, pauli, clock-shift");
        s->add_option("--extrapolation", o.extrapolation, "blocks or superop");
    };

    std::vector<std::pair<CLI::App *, std::function<Json(Json &)>>> commands;
    auto *nogo = app.add_subcommand("check-nogo", "trace test and anticommutator condition");
    add_pair(nogo);
    commands.emplace_back(nogo, [&](Json &in) { return check_nogo(o, in); });

    auto *pre = app.add_subcommand("recover-pre", "pre-processing recovery map");
    add_pair(pre);
    add_recovery(pre);
    commands.emplace_back(pre, [&](Json &in) { return recover(o, in, Protocol::kPre); });

    auto *post = app.add_subcommand("recover-post", "post-processing recovery map");
    add_pair(post);
    add_recovery(post);
    commands.emplace_back(post, [&](Json &in) { return recover(o, in, Protocol::kPost); });

    auto *q = app.add_subcommand("qpd", "quasi-probability decomposition of a map");
    q->add_option("--map", o.map, "channel spec or recover-* report");
    q->add_option("--grouping", o.grouping, "sign or eigenvector");
    commands.emplace_back(q, [&](Json &in) { return qpd(o, in); });

    auto *cmp = app.add_subcommand("compare", "recovery-map cost against the channel inverse");
    add_pair(cmp);
    add_recovery(cmp);
    cmp->add_option("--protocol", o.protocol, "pre or post");
    commands.emplace_back(cmp, [&](Json &in) { return compare(o, in); });

    auto *est = app.add_subcommand("estimate", "simulate the mitigated estimator");
    est->add_option("--plan", o.plan, "experiment plan (JSON)");
    est->add_option("--repeats", o.repeats, "independent repetitions for bias statistics");
    est->add_option("--mode", o.mode, "expectation or shot");
    est->add_option("--seed", o.seed, "overrides the plan seed and QOOT_SEED");
    est->add_option("--coverage-eps", o.coverage_eps, "half-width for the coverage fraction");
    est->add_option("--threads", o.threads, "worker threads (0: all cores)");
    add_recovery(est);
    commands.emplace_back(est, [&](Json &in) { return estimate(o, in); });

    auto *rep = app.add_subcommand("reproduce", "worked examples: gad-x, pauli-z");
    rep->alias("reproduce-sec6");
    rep->add_option("--case", o.case_name, "gad-x or pauli-z");
    rep->add_option("--p", o.p, "GAD excitation parameter");
    rep->add_option("--eps", o.eps, "GAD damping strength");
    rep->add_option("--probs", o.probs, "Pauli probabilities p0 p1 p2 p3")->expected(4);
    add_recovery(rep);
    commands.emplace_back(rep, [&](Json &in) { return reproduce(o, in); });

    for (auto &[sub, fn] : commands) sub->add_option("--out", o.out, "write the report here");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kExitMalformedInput;
    }

    CLI::App *chosen = app.get_subcommands().front();
    const auto it = std::find_if(commands.begin(), commands.end(),
                                 [&](const auto &c) { return c.first == chosen; });
    Json report = envelope(chosen->get_name(), Json::object());
    int code = kExitOk;
    try {
        Json input = Json::object();
        try {
            report["result"] = it->second(input);
        } catch (...) {
            report["input"] = input;
            throw;
        }
        report["input"] = std::move(input);
    } catch (Rejection &r) {
        report["result"] = std::move(r.result);
        report["error"] = error_json(r.error);
        code = kExitRejected;
    } catch (const Error &e) {
        report["error"] = error_json(e);
        code = e.is_domain_rejection() ? kExitRejected : kExitMalformedInput;
    } catch (const Json::exception &e) {
        report["error"] = {{"code", "invalid argument"}, {"message", e.what()}};
        code = kExitMalformedInput;
    }
    if (report.contains("error")) err << "error: " << report["error"]["message"].get<std::string>() << "\n";

    const std::string text = report.dump(2) + "\n";
    if (o.out.empty()) {
        out << text;
    } else {
        std::ofstream f(o.out, std::ios::binary);
        if (!f) {
            err << "error: cannot write " << o.out << "\n";
            return kExitMalformedInput;
        }
        f << text;
    }
    return code;
}

}  // namespace qoot::cli
