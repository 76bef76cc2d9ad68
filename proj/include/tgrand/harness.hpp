#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tgrand/guessers.hpp"
#include "tgrand/results.hpp"

namespace tgrand {

enum class Method { rlc, rlc_sd, rlc_tgrand_sort, rlc_tgrand_trace };

std::string to_string(Method m);
std::optional<Method> method_from_string(std::string_view s);

/// Parameter grid plus execution settings for one experiment. Every (epsilon,
/// lambda, B, N) combination is simulated with `trials` independent trials;
/// all requested methods see the same realization within a trial.
struct ExperimentConfig {
    std::size_t K = 10;
    std::vector<std::size_t> N_values = {20};
    std::vector<double> epsilons = {0.05};
    std::vector<double> lambdas = {4.0};
    std::vector<std::size_t> Bs = {64};
    std::size_t trials = 5000;
    std::uint64_t master_seed = 1;
    std::vector<Method> methods = {Method::rlc, Method::rlc_sd, Method::rlc_tgrand_sort,
                                   Method::rlc_tgrand_trace};
    GuessBudget budget;
    int threads = 0;               // 0 = hardware concurrency
    std::size_t max_transmissions = 0;  // completion delay cap; 0 = 8*K

    void validate() const;
    ConfigEcho echo(std::string_view experiment) const;
};

/// Fraction of trials in which all K source packets are recovered, per
/// (method, N, epsilon, lambda, B).
std::vector<ResultRecord> run_decoding_probability(const ExperimentConfig& config);

/// Mean number of transmitted packets needed to recover the source: per
/// trial, transmissions of n = K, K+1, ... packets are attempted, each on a
/// fresh realization shared by all methods, and the first decodable n is
/// recorded. N_values is ignored.
std::vector<ResultRecord> run_completion_delay(const ExperimentConfig& config);

/// Probability that the estimated error matrix equals the true one,
/// cumulative in the number L of erroneous packets. Guessing methods only.
std::vector<ResultRecord> run_error_matrix_match(const ExperimentConfig& config);

/// Mean floating-point work of the ordering procedures when all N packets
/// are routed through them, with per-column origins taken from the realized
/// channel states. T-GRAND methods only.
std::vector<ResultRecord> run_opcount_survey(const ExperimentConfig& config);

}  // namespace tgrand
