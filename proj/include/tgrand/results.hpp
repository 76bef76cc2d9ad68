#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace tgrand {

enum class OutputFormat { csv, json };

/// One aggregated experiment row. Fields that do not apply to an experiment
/// stay at their defaults and are emitted as-is so the column schema is
/// identical for every experiment.
struct ResultRecord {
    std::string experiment;
    std::string method;
    std::size_t K = 0;
    std::size_t N = 0;  // 0 when the experiment has no fixed N
    double epsilon = 0.0;
    double lambda = 0.0;
    std::size_t B = 0;
    std::size_t trials = 0;
    std::size_t l_th = 0;
    std::uint64_t max_queries = 0;
    std::string on_exhaustion;
    double decoding_probability = 0.0;
    double decoding_probability_stderr = 0.0;
    double mean_queries = 0.0;
    double mean_additions = 0.0;
    double mean_comparisons = 0.0;
    double mean_transmitted = 0.0;
    std::map<std::size_t, double> match_probability_by_L;

    bool operator==(const ResultRecord&) const = default;
};

/// Key/value pairs echoed into every output file so a run can be reproduced
/// from its artifacts alone.
using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

void emit_results(const std::vector<ResultRecord>& records, OutputFormat format,
                  std::ostream& out, const ConfigEcho& echo = {});

/// Writes to `path`; I/O failures are reported with the path in the message.
void emit_results_to_file(const std::vector<ResultRecord>& records, OutputFormat format,
                          const std::string& path, const ConfigEcho& echo = {});

std::vector<ResultRecord> parse_results(std::istream& in, OutputFormat format);
std::vector<ResultRecord> parse_results_file(const std::string& path, OutputFormat format);

/// Round-trip-exact decimal rendering of a double.
std::string format_double(double v);

}  // namespace tgrand
