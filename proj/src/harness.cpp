#include "tgrand/harness.hpp"

#include <array>
#include <atomic>
#include <cmath>
#include <cstring>
#include <functional>
#include <stdexcept>
#include <thread>

namespace tgrand {

namespace {

constexpr std::size_t kMethodCount = 4;

std::size_t method_index(Method m) { return static_cast<std::size_t>(m); }

std::uint64_t double_bits(double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof(bits));
    return bits;
}

/// One point of the parameter grid.
struct Combo {
    double epsilon;
    double lambda;
    std::size_t B;
    std::size_t N;  // unused (0) for completion delay
    std::uint64_t key;
};

std::uint64_t combo_key(std::uint64_t tag, std::size_t k, const Combo& c) {
    std::uint64_t h = mix_key(tag, k);
    h = mix_key(h, double_bits(c.epsilon));
    h = mix_key(h, double_bits(c.lambda));
    h = mix_key(h, c.B);
    h = mix_key(h, c.N);
    return h;
}

std::vector<Combo> make_combos(const ExperimentConfig& cfg, std::uint64_t tag, bool with_n) {
    std::vector<Combo> combos;
    for (double eps : cfg.epsilons)
        for (double lam : cfg.lambdas)
            for (std::size_t b : cfg.Bs) {
                if (with_n) {
                    for (std::size_t n : cfg.N_values) {
                        Combo c{eps, lam, b, n, 0};
                        c.key = combo_key(tag, cfg.K, c);
                        combos.push_back(c);
                    }
                } else {
                    Combo c{eps, lam, b, 0, 0};
                    c.key = combo_key(tag, cfg.K, c);
                    combos.push_back(c);
                }
            }
    return combos;
}

/// Runs fn(trial) for trial = 0..count-1 on `threads` workers. Results must
/// be written to per-trial slots so aggregation stays order-independent.
void run_parallel(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
    unsigned workers = threads > 0 ? static_cast<unsigned>(threads)
                                   : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

struct MethodTrialStats {
    bool ran = false;
    bool success = false;
    bool matched = false;
    std::uint64_t queries = 0;
    std::uint64_t additions = 0;
    std::uint64_t comparisons = 0;
    std::size_t transmitted = 0;
};

struct TrialStats {
    std::array<MethodTrialStats, kMethodCount> per_method;
    std::size_t bad_count = 0;
};

double binomial_stderr(double p, std::size_t trials) {
    return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

ResultRecord base_record(const ExperimentConfig& cfg, std::string_view experiment, Method m,
                         const Combo& c) {
    ResultRecord r;
    r.experiment = std::string(experiment);
    r.method = to_string(m);
    r.K = cfg.K;
    r.N = c.N;
    r.epsilon = c.epsilon;
    r.lambda = c.lambda;
    r.B = c.B;
    r.trials = cfg.trials;
    r.l_th = cfg.budget.l_th;
    r.max_queries = cfg.budget.max_queries;
    r.on_exhaustion = cfg.budget.on_exhaustion == GuessBudget::OnExhaustion::persist
                          ? "persist"
                          : "continue";
    return r;
}

/// Runs the repair stage of one assisted method on a failed reception.
/// Returns success plus the outcome so callers can inspect the estimate.
struct AssistResult {
    bool success = false;
    RepairOutcome outcome;
};

AssistResult run_assist(Method m, const Codebook& book, const Reception& rec,
                        const BitMatrix& u, const ChannelParams& params,
                        const GuessBudget& budget) {
    const BitMatrix s = syndrome(book, rec.Y);
    const BitMatrix h_bad = select_rows(*book.H, rec.bad);
    RepairOutcome outcome =
        m == Method::rlc_sd
            ? sd_matrix(h_bad, s, budget)
            : tgrand_matrix(h_bad, s, params,
                            m == Method::rlc_tgrand_sort ? OrderingMode::sort
                                                         : OrderingMode::trace,
                            budget);
    RedecodeResult redecode = repair_and_redecode(book, rec, outcome.e_hat);
    outcome.repaired_rows = redecode.migrated;
    const bool ok = redecode.decoded.has_value() && *redecode.decoded == u;
    return AssistResult{ok, std::move(outcome)};
}

}  // namespace

std::string to_string(Method m) {
    switch (m) {
        case Method::rlc: return "rlc";
        case Method::rlc_sd: return "rlc+sd";
        case Method::rlc_tgrand_sort: return "rlc+tgrand_sort";
        case Method::rlc_tgrand_trace: return "rlc+tgrand_trace";
    }
    return "?";
}

std::optional<Method> method_from_string(std::string_view s) {
    if (s == "rlc") return Method::rlc;
    if (s == "rlc+sd" || s == "sd") return Method::rlc_sd;
    if (s == "rlc+tgrand_sort" || s == "tgrand_sort") return Method::rlc_tgrand_sort;
    if (s == "rlc+tgrand_trace" || s == "tgrand_trace") return Method::rlc_tgrand_trace;
    return std::nullopt;
}

void ExperimentConfig::validate() const {
    if (K == 0) throw std::invalid_argument("config: K must be >= 1");
    if (trials == 0) throw std::invalid_argument("config: trials must be >= 1");
    if (methods.empty()) throw std::invalid_argument("config: methods must not be empty");
    if (epsilons.empty() || lambdas.empty() || Bs.empty() || N_values.empty())
        throw std::invalid_argument("config: parameter lists must not be empty");
    for (std::size_t n : N_values)
        if (n < K) throw std::invalid_argument("config: every N must be >= K");
    for (std::size_t b : Bs)
        if (b == 0) throw std::invalid_argument("config: B must be >= 1");
    for (double eps : epsilons)
        for (double lam : lambdas) params_from_stats(eps, lam);  // throws if invalid
    budget.validate();
}

ConfigEcho ExperimentConfig::echo(std::string_view experiment) const {
    auto join_sizes = [](const std::vector<std::size_t>& v) {
        std::string s;
        for (std::size_t x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
        return s;
    };
    auto join_doubles = [](const std::vector<double>& v) {
        std::string s;
        for (double x : v) s += (s.empty() ? "" : ",") + format_double(x);
        return s;
    };
    std::string methods_s;
    for (Method m : methods) methods_s += (methods_s.empty() ? "" : ",") + to_string(m);
    return ConfigEcho{
        {"experiment", std::string(experiment)},
        {"K", std::to_string(K)},
        {"N", join_sizes(N_values)},
        {"epsilon", join_doubles(epsilons)},
        {"lambda", join_doubles(lambdas)},
        {"B", join_sizes(Bs)},
        {"trials", std::to_string(trials)},
        {"seed", std::to_string(master_seed)},
        {"methods", methods_s},
        {"l_th", std::to_string(budget.l_th)},
        {"max_queries", std::to_string(budget.max_queries)},
        {"on_exhaustion",
         budget.on_exhaustion == GuessBudget::OnExhaustion::persist ? "persist" : "continue"},
    };
}

std::vector<ResultRecord> run_decoding_probability(const ExperimentConfig& cfg) {
    cfg.validate();
    std::vector<ResultRecord> records;

    for (const Combo& combo : make_combos(cfg, 0xD0, true)) {
        const ChannelParams params = params_from_stats(combo.epsilon, combo.lambda);
        std::vector<TrialStats> stats(cfg.trials);

        run_parallel(cfg.trials, cfg.threads, [&](std::size_t trial) {
            RngStream seed_rng = make_stream(cfg.master_seed, trial, StreamRole::codebook,
                                             combo.key);
            RngStream payload_rng = make_stream(cfg.master_seed, trial, StreamRole::payload,
                                                combo.key);
            RngStream channel_rng = make_stream(cfg.master_seed, trial, StreamRole::channel,
                                                combo.key);
            const Codebook book =
                build_codebook({cfg.K, combo.N, combo.B, seed_rng.next_u64()});
            const BitMatrix u = random_matrix(cfg.K, combo.B, payload_rng);
            const BitMatrix e = generate_error_matrix(params, combo.N, combo.B, channel_rng);
            const Reception rec = make_reception(book, u, e);

            const std::optional<BitMatrix> plain = rlc_decode(book, rec);
            const bool rlc_ok = plain.has_value() && *plain == u;

            TrialStats& ts = stats[trial];
            ts.bad_count = rec.bad.size();
            for (Method m : cfg.methods) {
                MethodTrialStats& ms = ts.per_method[method_index(m)];
                ms.ran = true;
                if (m == Method::rlc || rlc_ok) {
                    ms.success = rlc_ok;  // assisted methods reuse the RLC outcome
                    continue;
                }
                if (combo.N == cfg.K || rec.bad.empty()) {
                    ms.success = false;  // nothing to repair with
                    continue;
                }
                AssistResult assist = run_assist(m, book, rec, u, params, cfg.budget);
                ms.success = assist.success;
                ms.queries = assist.outcome.queries_total;
                ms.additions = assist.outcome.ordering_ops.additions;
                ms.comparisons = assist.outcome.ordering_ops.comparisons;
            }
        });

        for (Method m : cfg.methods) {
            ResultRecord r = base_record(cfg, "decoding_probability", m, combo);
            double successes = 0;
            double queries = 0;
            double additions = 0;
            double comparisons = 0;
            for (const TrialStats& ts : stats) {
                const MethodTrialStats& ms = ts.per_method[method_index(m)];
                successes += ms.success ? 1.0 : 0.0;
                queries += static_cast<double>(ms.queries);
                additions += static_cast<double>(ms.additions);
                comparisons += static_cast<double>(ms.comparisons);
            }
            const double trials_d = static_cast<double>(cfg.trials);
            r.decoding_probability = successes / trials_d;
            r.decoding_probability_stderr = binomial_stderr(r.decoding_probability, cfg.trials);
            r.mean_queries = queries / trials_d;
            r.mean_additions = additions / trials_d;
            r.mean_comparisons = comparisons / trials_d;
            records.push_back(std::move(r));
        }
    }
    return records;
}

std::vector<ResultRecord> run_completion_delay(const ExperimentConfig& cfg) {
    cfg.validate();
    const std::size_t cap = cfg.max_transmissions > 0 ? cfg.max_transmissions : 8 * cfg.K;
    if (cap <= cfg.K) throw std::invalid_argument("config: transmission cap must exceed K");
    std::vector<ResultRecord> records;

    for (const Combo& combo : make_combos(cfg, 0xCD, false)) {
        const ChannelParams params = params_from_stats(combo.epsilon, combo.lambda);
        std::vector<TrialStats> stats(cfg.trials);

        run_parallel(cfg.trials, cfg.threads, [&](std::size_t trial) {
            // A transmission of n packets is simulated as its own realization
            // (fresh generator, payload and channel), so the recorded value is
            // the first n whose independent realization decodes. All methods
            // share the realization of each (trial, n) attempt.
            for (std::size_t n = cfg.K; n <= cap; ++n) {
                bool any_pending = false;
                for (Method m : cfg.methods)
                    if (stats[trial].per_method[method_index(m)].transmitted == 0)
                        any_pending = true;
                if (!any_pending) break;

                const std::uint64_t attempt_key = mix_key(combo.key, n);
                RngStream seed_rng = make_stream(cfg.master_seed, trial, StreamRole::codebook,
                                                 attempt_key);
                RngStream payload_rng = make_stream(cfg.master_seed, trial,
                                                    StreamRole::payload, attempt_key);
                RngStream channel_rng = make_stream(cfg.master_seed, trial,
                                                    StreamRole::channel, attempt_key);
                const Codebook book =
                    build_codebook({cfg.K, n, combo.B, seed_rng.next_u64()});
                const BitMatrix u = random_matrix(cfg.K, combo.B, payload_rng);
                const BitMatrix e = generate_error_matrix(params, n, combo.B, channel_rng);
                const Reception rec = make_reception(book, u, e);

                const std::optional<BitMatrix> plain = rlc_decode(book, rec);
                const bool rlc_ok = plain.has_value() && *plain == u;

                for (Method m : cfg.methods) {
                    MethodTrialStats& ms = stats[trial].per_method[method_index(m)];
                    ms.ran = true;
                    if (ms.transmitted != 0) continue;  // already completed
                    bool ok = rlc_ok;
                    if (!ok && m != Method::rlc && n > cfg.K && !rec.bad.empty()) {
                        AssistResult assist = run_assist(m, book, rec, u, params, cfg.budget);
                        ok = assist.success;
                        ms.queries += assist.outcome.queries_total;
                        ms.additions += assist.outcome.ordering_ops.additions;
                        ms.comparisons += assist.outcome.ordering_ops.comparisons;
                    }
                    if (ok) {
                        ms.success = true;
                        ms.transmitted = n;
                    } else if (n == cap) {
                        ms.transmitted = cap;  // safety stop, counted at the cap
                    }
                }
            }
        });

        for (Method m : cfg.methods) {
            ResultRecord r = base_record(cfg, "completion_delay", m, combo);
            double transmitted = 0;
            double queries = 0;
            for (const TrialStats& ts : stats) {
                const MethodTrialStats& ms = ts.per_method[method_index(m)];
                transmitted += static_cast<double>(ms.transmitted);
                queries += static_cast<double>(ms.queries);
            }
            const double trials_d = static_cast<double>(cfg.trials);
            r.mean_transmitted = transmitted / trials_d;
            r.mean_queries = queries / trials_d;
            records.push_back(std::move(r));
        }
    }
    return records;
}

std::vector<ResultRecord> run_error_matrix_match(const ExperimentConfig& cfg) {
    cfg.validate();
    for (std::size_t n : cfg.N_values)
        if (n <= cfg.K)
            throw std::invalid_argument("config: matrix match needs N > K for parity rows");
    std::vector<Method> guess_methods;
    for (Method m : cfg.methods)
        if (m != Method::rlc) guess_methods.push_back(m);
    if (guess_methods.empty())
        throw std::invalid_argument("config: matrix match needs a guessing method");

    std::vector<ResultRecord> records;
    for (const Combo& combo : make_combos(cfg, 0xEA, true)) {
        const ChannelParams params = params_from_stats(combo.epsilon, combo.lambda);
        std::vector<TrialStats> stats(cfg.trials);

        run_parallel(cfg.trials, cfg.threads, [&](std::size_t trial) {
            RngStream seed_rng = make_stream(cfg.master_seed, trial, StreamRole::codebook,
                                             combo.key);
            RngStream payload_rng = make_stream(cfg.master_seed, trial, StreamRole::payload,
                                                combo.key);
            RngStream channel_rng = make_stream(cfg.master_seed, trial, StreamRole::channel,
                                                combo.key);
            const Codebook book =
                build_codebook({cfg.K, combo.N, combo.B, seed_rng.next_u64()});
            const BitMatrix u = random_matrix(cfg.K, combo.B, payload_rng);
            const BitMatrix e = generate_error_matrix(params, combo.N, combo.B, channel_rng);
            const Reception rec = make_reception(book, u, e);

            TrialStats& ts = stats[trial];
            ts.bad_count = rec.bad.size();
            for (Method m : guess_methods) {
                MethodTrialStats& ms = ts.per_method[method_index(m)];
                ms.ran = true;
                if (rec.bad.empty()) {
                    ms.matched = true;  // empty estimate is trivially correct
                    continue;
                }
                const BitMatrix s = syndrome(book, rec.Y);
                const BitMatrix h_bad = select_rows(*book.H, rec.bad);
                RepairOutcome outcome =
                    m == Method::rlc_sd
                        ? sd_matrix(h_bad, s, cfg.budget)
                        : tgrand_matrix(h_bad, s, params,
                                        m == Method::rlc_tgrand_sort ? OrderingMode::sort
                                                                     : OrderingMode::trace,
                                        cfg.budget);
                ms.matched = outcome.e_hat == select_rows(e, rec.bad);
                ms.queries = outcome.queries_total;
            }
        });

        for (Method m : guess_methods) {
            ResultRecord r = base_record(cfg, "matrix_match", m, combo);
            double queries = 0;
            for (std::size_t l = 0; l <= combo.N; ++l) {
                std::size_t eligible = 0;
                std::size_t matched = 0;
                for (const TrialStats& ts : stats) {
                    if (ts.bad_count > l) continue;
                    ++eligible;
                    if (ts.per_method[method_index(m)].matched) ++matched;
                }
                if (eligible > 0)
                    r.match_probability_by_L[l] =
                        static_cast<double>(matched) / static_cast<double>(eligible);
            }
            for (const TrialStats& ts : stats)
                queries += static_cast<double>(ts.per_method[method_index(m)].queries);
            r.mean_queries = queries / static_cast<double>(cfg.trials);
            records.push_back(std::move(r));
        }
    }
    return records;
}

std::vector<ResultRecord> run_opcount_survey(const ExperimentConfig& cfg) {
    cfg.validate();
    std::vector<Method> modes;
    for (Method m : cfg.methods)
        if (m == Method::rlc_tgrand_sort || m == Method::rlc_tgrand_trace) modes.push_back(m);
    if (modes.empty())
        throw std::invalid_argument("config: opcount survey needs a T-GRAND method");

    std::vector<ResultRecord> records;
    for (const Combo& combo : make_combos(cfg, 0x0C, true)) {
        const ChannelParams params = params_from_stats(combo.epsilon, combo.lambda);
        std::vector<TrialStats> stats(cfg.trials);

        run_parallel(cfg.trials, cfg.threads, [&](std::size_t trial) {
            RngStream channel_rng = make_stream(cfg.master_seed, trial, StreamRole::channel,
                                                combo.key);
            const BitMatrix e = generate_error_matrix(params, combo.N, combo.B, channel_rng);

            for (Method m : modes) {
                MethodTrialStats& ms = stats[trial].per_method[method_index(m)];
                ms.ran = true;
                // Worst-case routing: every packet goes through the ordering
                // stage, and each column's origin is the realized previous
                // column (all chains start in state 0).
                BitVector origin(combo.N);
                for (std::size_t b = 0; b < combo.B; ++b) {
                    int l1 = static_cast<int>(origin.weight());
                    int l0 = static_cast<int>(combo.N) - l1;
                    if (m == Method::rlc_tgrand_sort) {
                        OrderedGroups og = calc_prob_and_sort(params.p01, params.p10, l0, l1);
                        ms.additions += og.ops.additions;
                        ms.comparisons += og.ops.comparisons;
                    } else {
                        GroupTracer tracer(params.p01, params.p10, l0, l1);
                        for (std::size_t i = 0; i < cfg.budget.l_th && tracer.next(); ++i) {
                        }
                        ms.additions += tracer.ops().additions;
                        ms.comparisons += tracer.ops().comparisons;
                    }
                    origin = e.column(b);
                }
            }
        });

        for (Method m : modes) {
            ResultRecord r = base_record(cfg, "opcount", m, combo);
            double additions = 0;
            double comparisons = 0;
            for (const TrialStats& ts : stats) {
                additions += static_cast<double>(ts.per_method[method_index(m)].additions);
                comparisons += static_cast<double>(ts.per_method[method_index(m)].comparisons);
            }
            const double trials_d = static_cast<double>(cfg.trials);
            r.mean_additions = additions / trials_d;
            r.mean_comparisons = comparisons / trials_d;
            records.push_back(std::move(r));
        }
    }
    return records;
}

}  // namespace tgrand
