#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "tgrand/harness.hpp"

using namespace tgrand;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig cfg;
    cfg.K = 6;
    cfg.N_values = {12};
    cfg.epsilons = {0.05};
    cfg.lambdas = {3.0};
    cfg.Bs = {32};
    cfg.trials = 300;
    cfg.master_seed = 11;
    cfg.threads = 2;
    return cfg;
}

const ResultRecord& find(const std::vector<ResultRecord>& records, const std::string& method,
                         std::size_t n = 0) {
    for (const ResultRecord& r : records)
        if (r.method == method && (n == 0 || r.N == n)) return r;
    throw std::runtime_error("record not found: " + method);
}

}  // namespace

TEST_CASE("near-error-free channel decodes with probability one") {
    ExperimentConfig cfg = small_config();
    cfg.epsilons = {1e-5};
    cfg.trials = 200;
    const auto records = run_decoding_probability(cfg);
    for (const ResultRecord& r : records) {
        CHECK(r.decoding_probability == 1.0);
        CHECK(r.decoding_probability_stderr == 0.0);
    }
}

TEST_CASE("assisted methods dominate plain decoding per configuration") {
    const auto records = run_decoding_probability(small_config());
    const double p_rlc = find(records, "rlc").decoding_probability;
    CHECK(find(records, "rlc+sd").decoding_probability >= p_rlc);
    CHECK(find(records, "rlc+tgrand_sort").decoding_probability >= p_rlc);
    CHECK(find(records, "rlc+tgrand_trace").decoding_probability >= p_rlc);
}

TEST_CASE("reported standard errors are binomial") {
    for (const ResultRecord& r : run_decoding_probability(small_config())) {
        const double expect =
            std::sqrt(r.decoding_probability * (1.0 - r.decoding_probability) / r.trials);
        CHECK(r.decoding_probability_stderr == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("identical config reproduces identical records at any thread count") {
    ExperimentConfig cfg = small_config();
    cfg.trials = 150;
    cfg.threads = 1;
    const auto base = run_decoding_probability(cfg);
    cfg.threads = 2;
    CHECK(run_decoding_probability(cfg) == base);
    cfg.threads = 8;
    CHECK(run_decoding_probability(cfg) == base);

    std::ostringstream a;
    std::ostringstream b;
    emit_results(base, OutputFormat::csv, a, cfg.echo("decoding_probability"));
    emit_results(run_decoding_probability(cfg), OutputFormat::csv, b,
                 cfg.echo("decoding_probability"));
    CHECK(a.str() == b.str());
}

TEST_CASE("decoding probability is non-decreasing in N within 3 sigma") {
    ExperimentConfig cfg = small_config();
    cfg.K = 8;
    cfg.N_values = {10, 11, 12, 13, 14, 15, 16};
    cfg.trials = 500;
    cfg.methods = {Method::rlc, Method::rlc_tgrand_trace};
    const auto records = run_decoding_probability(cfg);
    for (Method m : cfg.methods) {
        for (std::size_t i = 1; i < cfg.N_values.size(); ++i) {
            const ResultRecord& prev = find(records, to_string(m), cfg.N_values[i - 1]);
            const ResultRecord& cur = find(records, to_string(m), cfg.N_values[i]);
            const double allowance = 3.0 * std::hypot(prev.decoding_probability_stderr,
                                                      cur.decoding_probability_stderr);
            CHECK(cur.decoding_probability >= prev.decoding_probability - allowance);
        }
    }
}

TEST_CASE("completion delay approaches K on a clean channel") {
    ExperimentConfig cfg = small_config();
    cfg.epsilons = {1e-5};
    cfg.trials = 200;
    for (const ResultRecord& r : run_completion_delay(cfg))
        CHECK(r.mean_transmitted == doctest::Approx(static_cast<double>(cfg.K)).epsilon(1e-3));
}

TEST_CASE("completion delay orders methods as expected") {
    ExperimentConfig cfg = small_config();
    cfg.trials = 400;
    const auto records = run_completion_delay(cfg);
    const double rlc = find(records, "rlc").mean_transmitted;
    const double sd = find(records, "rlc+sd").mean_transmitted;
    const double tg = find(records, "rlc+tgrand_sort").mean_transmitted;
    CHECK(sd <= rlc);
    CHECK(tg <= sd + 0.2);  // small-sample slack
    CHECK(rlc >= static_cast<double>(cfg.K));
}

TEST_CASE("matrix match: trivial bucket and method dominance") {
    ExperimentConfig cfg = small_config();
    cfg.K = 8;
    cfg.N_values = {14};
    cfg.epsilons = {0.06};
    cfg.trials = 400;
    cfg.methods = {Method::rlc_sd, Method::rlc_tgrand_sort};
    const auto records = run_error_matrix_match(cfg);
    const ResultRecord& sd = find(records, "rlc+sd");
    const ResultRecord& tg = find(records, "rlc+tgrand_sort");
    REQUIRE_FALSE(sd.match_probability_by_L.empty());
    // Trials with zero erroneous packets count as exact matches.
    if (sd.match_probability_by_L.count(0)) {
        CHECK(sd.match_probability_by_L.at(0) == 1.0);
        CHECK(tg.match_probability_by_L.at(0) == 1.0);
    }
    // Burst-aware ordering wins (statistically) at every cumulative bucket.
    for (const auto& [l, p_sd] : sd.match_probability_by_L) {
        const double sigma = std::sqrt(0.25 / static_cast<double>(cfg.trials));
        CHECK(tg.match_probability_by_L.at(l) >= p_sd - 3.0 * sigma);
    }
    CHECK(tg.match_probability_by_L.rbegin()->second >
          sd.match_probability_by_L.rbegin()->second);
}

TEST_CASE("matrix match at the documented operating point") {
    ExperimentConfig cfg;
    cfg.K = 20;
    cfg.N_values = {30};
    cfg.epsilons = {0.05};
    cfg.lambdas = {4.0};
    cfg.Bs = {64};
    cfg.trials = 500;
    cfg.master_seed = 9;
    cfg.threads = 2;
    cfg.methods = {Method::rlc_tgrand_sort};
    const auto records = run_error_matrix_match(cfg);
    const ResultRecord& tg = find(records, "rlc+tgrand_sort");
    REQUIRE(tg.match_probability_by_L.count(14) == 1);
    CHECK(tg.match_probability_by_L.at(14) == doctest::Approx(0.8).epsilon(0.125));
}

TEST_CASE("opcount survey: trace additions are exact, sort additions near closed form") {
    ExperimentConfig cfg;
    cfg.K = 10;
    cfg.N_values = {20};
    cfg.epsilons = {0.05};
    cfg.lambdas = {4.0};
    cfg.Bs = {64};
    cfg.trials = 2000;
    cfg.master_seed = 3;
    cfg.threads = 2;
    cfg.methods = {Method::rlc_tgrand_sort, Method::rlc_tgrand_trace};
    const auto records = run_opcount_survey(cfg);

    const ResultRecord& trace = find(records, "rlc+tgrand_trace");
    CHECK(trace.mean_additions == 64.0 * (8.0 + 20.0));  // every column consumes l_th groups

    const ResultRecord& sort = find(records, "rlc+tgrand_sort");
    const double closed_form = 64.0 * (20.0 * 19.0 * 0.05 * 0.95 + 2.0 * 20.0 + 1.0);
    CHECK(std::abs(sort.mean_additions - closed_form) / closed_form < 0.02);
}

TEST_CASE("N equal to K leaves assisted methods at the plain outcome") {
    ExperimentConfig cfg = small_config();
    cfg.N_values = {cfg.K};  // no parity rows, nothing to repair with
    cfg.epsilons = {0.02};
    cfg.trials = 250;
    const auto records = run_decoding_probability(cfg);
    const double p_rlc = find(records, "rlc").decoding_probability;
    CHECK(p_rlc > 0.0);
    CHECK(p_rlc < 1.0);
    for (const ResultRecord& r : records) {
        CHECK(r.decoding_probability == p_rlc);
        CHECK(r.mean_queries == 0.0);
    }
}

TEST_CASE("config validation names the offending field") {
    ExperimentConfig cfg = small_config();
    cfg.N_values = {4};  // below K
    CHECK_THROWS_AS(run_decoding_probability(cfg), std::invalid_argument);
    cfg = small_config();
    cfg.epsilons = {1.2};
    CHECK_THROWS_AS(run_decoding_probability(cfg), std::invalid_argument);
    cfg = small_config();
    cfg.trials = 0;
    CHECK_THROWS_AS(run_decoding_probability(cfg), std::invalid_argument);
    cfg = small_config();
    cfg.methods = {Method::rlc};
    CHECK_THROWS_AS(run_error_matrix_match(cfg), std::invalid_argument);
    CHECK_THROWS_AS(run_opcount_survey(cfg), std::invalid_argument);
}
