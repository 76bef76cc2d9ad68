// Simulation front end: decoding probability, completion delay, error-matrix
// match and operation-count experiments, plus a side-by-side demo of the two
// group-ordering procedures. Results go to CSV (default, stdout) or JSON;
// summaries go to stderr.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tgrand/harness.hpp"
#include "tgrand/likelihood.hpp"
#include "tgrand/results.hpp"

namespace {

using tgrand::ExperimentConfig;
using tgrand::Method;

std::vector<std::size_t> parse_size_list(const std::string& text, const std::string& field) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const std::size_t dots = item.find("..");
        try {
            if (dots != std::string::npos) {
                const std::size_t lo = std::stoul(item.substr(0, dots));
                const std::size_t hi = std::stoul(item.substr(dots + 2));
                if (hi < lo) throw std::invalid_argument("descending range");
                for (std::size_t v = lo; v <= hi; ++v) out.push_back(v);
            } else {
                out.push_back(std::stoul(item));
            }
        } catch (const std::exception&) {
            throw CLI::ValidationError(field, "cannot parse '" + item + "'");
        }
    }
    if (out.empty()) throw CLI::ValidationError(field, "empty list");
    return out;
}

std::vector<double> parse_double_list(const std::string& text, const std::string& field) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw CLI::ValidationError(field, "cannot parse '" + item + "'");
        }
    }
    if (out.empty()) throw CLI::ValidationError(field, "empty list");
    return out;
}

struct CommonFlags {
    std::size_t K = 10;
    std::string N = "20";
    std::string epsilon = "0.05";
    std::string lambda = "4";
    std::string B = "64";
    std::size_t trials = 5000;
    std::uint64_t seed = 1;
    std::string methods = "rlc,rlc+sd,rlc+tgrand_sort,rlc+tgrand_trace";
    std::size_t l_th = 8;
    std::uint64_t max_queries = std::uint64_t{1} << 20;
    std::string on_exhaustion = "persist";
    std::string output;
    std::string format = "csv";
    int threads = 0;
    std::size_t max_transmissions = 0;
};

void add_common_flags(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--K", f.K, "Source packet count");
    cmd->add_option("--N", f.N, "Transmitted packets: single value, a..b range, or comma list");
    cmd->add_option("--epsilon", f.epsilon, "Bit error probability list (comma separated)");
    cmd->add_option("--lambda", f.lambda, "Mean burst length list (comma separated)");
    cmd->add_option("--B", f.B, "Packet length in bits (comma separated list)");
    cmd->add_option("--trials", f.trials, "Monte Carlo trials per parameter point");
    cmd->add_option("--seed", f.seed, "Master seed")->envname("TGRAND_SEED");
    cmd->add_option("--methods", f.methods,
                    "Comma list from rlc, rlc+sd, rlc+tgrand_sort, rlc+tgrand_trace");
    cmd->add_option("--l-th", f.l_th, "Transition-group cap per column (trace mode)");
    cmd->add_option("--max-queries", f.max_queries, "Syndrome-test cap per column");
    cmd->add_option("--on-exhaustion", f.on_exhaustion,
                    "Budget exhaustion policy: persist or continue")
        ->check(CLI::IsMember({"persist", "continue"}));
    cmd->add_option("--output", f.output, "Output path (default: stdout)");
    cmd->add_option("--format", f.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--threads", f.threads, "Worker threads (0 = auto)");
    cmd->add_option("--max-transmissions", f.max_transmissions,
                    "Completion-delay safety cap (0 = 8*K)");
}

ExperimentConfig config_from_flags(const CommonFlags& f) {
    ExperimentConfig cfg;
    cfg.K = f.K;
    cfg.N_values = parse_size_list(f.N, "--N");
    cfg.epsilons = parse_double_list(f.epsilon, "--epsilon");
    cfg.lambdas = parse_double_list(f.lambda, "--lambda");
    cfg.Bs = parse_size_list(f.B, "--B");
    cfg.trials = f.trials;
    cfg.master_seed = f.seed;
    cfg.methods.clear();
    std::stringstream ss(f.methods);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto m = tgrand::method_from_string(item);
        if (!m) throw CLI::ValidationError("--methods", "unknown method '" + item + "'");
        cfg.methods.push_back(*m);
    }
    cfg.budget.l_th = f.l_th;
    cfg.budget.max_queries = f.max_queries;
    cfg.budget.on_exhaustion = f.on_exhaustion == "persist"
                                   ? tgrand::GuessBudget::OnExhaustion::persist
                                   : tgrand::GuessBudget::OnExhaustion::continue_search;
    cfg.threads = f.threads;
    cfg.max_transmissions = f.max_transmissions;
    return cfg;
}

void print_summary(const std::vector<tgrand::ResultRecord>& records) {
    for (const auto& r : records) {
        std::cerr << r.experiment << " " << r.method << " K=" << r.K;
        if (r.N > 0) std::cerr << " N=" << r.N;
        std::cerr << " eps=" << r.epsilon << " lambda=" << r.lambda << " B=" << r.B;
        if (r.experiment == "decoding_probability")
            std::cerr << " p=" << r.decoding_probability << " (+/- "
                      << r.decoding_probability_stderr << ")";
        else if (r.experiment == "completion_delay")
            std::cerr << " E(N)=" << r.mean_transmitted;
        else if (r.experiment == "opcount")
            std::cerr << " mean_additions=" << r.mean_additions
                      << " mean_comparisons=" << r.mean_comparisons;
        else if (r.experiment == "matrix_match" && !r.match_probability_by_L.empty())
            std::cerr << " match(L=" << r.match_probability_by_L.rbegin()->first
                      << ")=" << r.match_probability_by_L.rbegin()->second;
        std::cerr << "\n";
    }
}

int emit(const std::vector<tgrand::ResultRecord>& records, const CommonFlags& f,
         const tgrand::ConfigEcho& echo) {
    const tgrand::OutputFormat fmt =
        f.format == "json" ? tgrand::OutputFormat::json : tgrand::OutputFormat::csv;
    if (f.output.empty()) {
        tgrand::emit_results(records, fmt, std::cout, echo);
    } else {
        tgrand::emit_results_to_file(records, fmt, f.output, echo);
    }
    print_summary(records);
    return 0;
}

int run_trace_demo(double p01, double p10, int L0, int L1, std::size_t count) {
    const tgrand::GroupGrid grid = tgrand::GroupGrid::make(p01, p10, L0, L1);
    tgrand::OrderedGroups sorted = tgrand::calc_prob_and_sort(p01, p10, L0, L1);
    tgrand::GroupTracer tracer(p01, p10, L0, L1);

    std::cout << "alpha0=" << grid.alpha0 << " alpha1=" << grid.alpha1 << "\n";
    std::cout << "rank  sort(l0,l1)  phi_sort      trace(l0,l1)  phi_trace\n";
    const std::size_t limit = std::min<std::size_t>(count, grid.size());
    for (std::size_t i = 0; i < limit; ++i) {
        const tgrand::GroupCoord s = sorted.coords[i];
        const auto t = tracer.next();
        char line[128];
        std::snprintf(line, sizeof(line), "%-5zu (%2d,%2d)      %-12.6g  (%2d,%2d)       %-12.6g",
                      i + 1, s.l0, s.l1, grid.penalty(s.l0, s.l1), t->l0, t->l1,
                      grid.penalty(t->l0, t->l1));
        std::cout << line << "\n";
    }
    std::cout << "sort ops: additions=" << sorted.ops.additions
              << " comparisons=" << sorted.ops.comparisons
              << "; trace ops: additions=" << tracer.ops().additions
              << " comparisons=" << tracer.ops().comparisons << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Packet-level random linear coding with syndrome decoding and "
                 "transversal GRAND over burst-error channels"};
    app.require_subcommand(1);

    CommonFlags dp_flags;
    dp_flags.N = "10..20";
    CLI::App* dp = app.add_subcommand("decoding-probability",
                                      "Decoding probability vs transmitted packets");
    add_common_flags(dp, dp_flags);

    CommonFlags cd_flags;
    CLI::App* cd = app.add_subcommand("completion-delay",
                                      "Mean transmissions until the source decodes");
    add_common_flags(cd, cd_flags);

    CommonFlags mm_flags;
    mm_flags.K = 20;
    mm_flags.N = "30";
    CLI::App* mm = app.add_subcommand("matrix-match",
                                      "Probability the estimated error matrix is exact, "
                                      "cumulative in the number of erroneous packets");
    mm_flags.methods = "rlc+sd,rlc+tgrand_sort,rlc+tgrand_trace";
    add_common_flags(mm, mm_flags);

    CommonFlags oc_flags;
    oc_flags.methods = "rlc+tgrand_sort,rlc+tgrand_trace";
    oc_flags.trials = 10000;
    CLI::App* oc = app.add_subcommand("opcount",
                                      "Measured ordering work vs closed-form predictions");
    add_common_flags(oc, oc_flags);

    double td_p01 = 0.4;
    double td_p10 = 0.3;
    int td_l0 = 3;
    int td_l1 = 3;
    std::size_t td_count = 5;
    CLI::App* td = app.add_subcommand("trace-demo",
                                      "Print the first groups from both ordering procedures");
    td->add_option("--p01", td_p01, "0->1 transition probability");
    td->add_option("--p10", td_p10, "1->0 transition probability");
    td->add_option("--L0", td_l0, "Zeros in the origin vector");
    td->add_option("--L1", td_l1, "Ones in the origin vector");
    td->add_option("--count", td_count, "Groups to print");

    CLI11_PARSE(app, argc, argv);

    try {
        if (dp->parsed()) {
            const ExperimentConfig cfg = config_from_flags(dp_flags);
            return emit(tgrand::run_decoding_probability(cfg), dp_flags,
                        cfg.echo("decoding_probability"));
        }
        if (cd->parsed()) {
            const ExperimentConfig cfg = config_from_flags(cd_flags);
            return emit(tgrand::run_completion_delay(cfg), cd_flags,
                        cfg.echo("completion_delay"));
        }
        if (mm->parsed()) {
            const ExperimentConfig cfg = config_from_flags(mm_flags);
            return emit(tgrand::run_error_matrix_match(cfg), mm_flags,
                        cfg.echo("matrix_match"));
        }
        if (oc->parsed()) {
            const ExperimentConfig cfg = config_from_flags(oc_flags);
            return emit(tgrand::run_opcount_survey(cfg), oc_flags, cfg.echo("opcount"));
        }
        if (td->parsed()) {
            if (td_l0 < 0 || td_l1 < 0) {
                std::cerr << "error: --L0/--L1 must be non-negative\n";
                return 1;
            }
            return run_trace_demo(td_p01, td_p10, td_l0, td_l1, td_count);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
