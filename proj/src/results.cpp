#include "tgrand/results.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace tgrand {

namespace {

constexpr const char* kColumns =
    "experiment,method,K,N,epsilon,lambda,B,trials,l_th,max_queries,on_exhaustion,"
    "decoding_probability,decoding_probability_stderr,mean_queries,mean_additions,"
    "mean_comparisons,mean_transmitted,match_probability_by_L";

std::string match_map_to_string(const std::map<std::size_t, double>& m) {
    std::string out;
    for (const auto& [l, p] : m) {
        if (!out.empty()) out += '|';
        out += std::to_string(l) + ':' + format_double(p);
    }
    return out;
}

std::map<std::size_t, double> match_map_from_string(const std::string& s) {
    std::map<std::size_t, double> m;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t end = s.find('|', pos);
        if (end == std::string::npos) end = s.size();
        const std::string item = s.substr(pos, end - pos);
        const std::size_t colon = item.find(':');
        if (colon == std::string::npos)
            throw std::runtime_error("parse_results: malformed match map entry '" + item + "'");
        m[std::stoul(item.substr(0, colon))] = std::stod(item.substr(colon + 1));
        pos = end + 1;
    }
    return m;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

nlohmann::ordered_json record_to_json(const ResultRecord& r) {
    nlohmann::ordered_json j;
    j["experiment"] = r.experiment;
    j["method"] = r.method;
    j["K"] = r.K;
    j["N"] = r.N;
    j["epsilon"] = r.epsilon;
    j["lambda"] = r.lambda;
    j["B"] = r.B;
    j["trials"] = r.trials;
    j["l_th"] = r.l_th;
    j["max_queries"] = r.max_queries;
    j["on_exhaustion"] = r.on_exhaustion;
    j["decoding_probability"] = r.decoding_probability;
    j["decoding_probability_stderr"] = r.decoding_probability_stderr;
    j["mean_queries"] = r.mean_queries;
    j["mean_additions"] = r.mean_additions;
    j["mean_comparisons"] = r.mean_comparisons;
    j["mean_transmitted"] = r.mean_transmitted;
    nlohmann::ordered_json match = nlohmann::ordered_json::object();
    for (const auto& [l, p] : r.match_probability_by_L) match[std::to_string(l)] = p;
    j["match_probability_by_L"] = std::move(match);
    return j;
}

ResultRecord record_from_json(const nlohmann::json& j) {
    ResultRecord r;
    r.experiment = j.at("experiment").get<std::string>();
    r.method = j.at("method").get<std::string>();
    r.K = j.at("K").get<std::size_t>();
    r.N = j.at("N").get<std::size_t>();
    r.epsilon = j.at("epsilon").get<double>();
    r.lambda = j.at("lambda").get<double>();
    r.B = j.at("B").get<std::size_t>();
    r.trials = j.at("trials").get<std::size_t>();
    r.l_th = j.at("l_th").get<std::size_t>();
    r.max_queries = j.at("max_queries").get<std::uint64_t>();
    r.on_exhaustion = j.at("on_exhaustion").get<std::string>();
    r.decoding_probability = j.at("decoding_probability").get<double>();
    r.decoding_probability_stderr = j.at("decoding_probability_stderr").get<double>();
    r.mean_queries = j.at("mean_queries").get<double>();
    r.mean_additions = j.at("mean_additions").get<double>();
    r.mean_comparisons = j.at("mean_comparisons").get<double>();
    r.mean_transmitted = j.at("mean_transmitted").get<double>();
    for (const auto& [key, value] : j.at("match_probability_by_L").items())
        r.match_probability_by_L[std::stoul(key)] = value.get<double>();
    return r;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void emit_results(const std::vector<ResultRecord>& records, OutputFormat format,
                  std::ostream& out, const ConfigEcho& echo) {
    if (format == OutputFormat::csv) {
        for (const auto& [key, value] : echo) out << "# " << key << "=" << value << "\n";
        out << kColumns << "\n";
        for (const ResultRecord& r : records) {
            out << r.experiment << ',' << r.method << ',' << r.K << ',' << r.N << ','
                << format_double(r.epsilon) << ',' << format_double(r.lambda) << ',' << r.B
                << ',' << r.trials << ',' << r.l_th << ',' << r.max_queries << ','
                << r.on_exhaustion << ',' << format_double(r.decoding_probability) << ','
                << format_double(r.decoding_probability_stderr) << ','
                << format_double(r.mean_queries) << ',' << format_double(r.mean_additions)
                << ',' << format_double(r.mean_comparisons) << ','
                << format_double(r.mean_transmitted) << ','
                << match_map_to_string(r.match_probability_by_L) << "\n";
        }
    } else {
        nlohmann::ordered_json j;
        nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
        for (const auto& [key, value] : echo) cfg[key] = value;
        j["config"] = std::move(cfg);
        j["records"] = nlohmann::ordered_json::array();
        for (const ResultRecord& r : records) j["records"].push_back(record_to_json(r));
        out << j.dump(2) << "\n";
    }
}

void emit_results_to_file(const std::vector<ResultRecord>& records, OutputFormat format,
                          const std::string& path, const ConfigEcho& echo) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("emit_results: cannot open '" + path + "' for writing");
    emit_results(records, format, out, echo);
    out.flush();
    if (!out) throw std::runtime_error("emit_results: write to '" + path + "' failed");
}

std::vector<ResultRecord> parse_results(std::istream& in, OutputFormat format) {
    std::vector<ResultRecord> records;
    if (format == OutputFormat::csv) {
        std::string line;
        bool header_seen = false;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            if (!header_seen) {
                if (line != kColumns)
                    throw std::runtime_error("parse_results: unexpected CSV header");
                header_seen = true;
                continue;
            }
            const std::vector<std::string> f = split_csv_line(line);
            if (f.size() != 18)
                throw std::runtime_error("parse_results: expected 18 fields, got " +
                                         std::to_string(f.size()));
            ResultRecord r;
            r.experiment = f[0];
            r.method = f[1];
            r.K = std::stoul(f[2]);
            r.N = std::stoul(f[3]);
            r.epsilon = std::stod(f[4]);
            r.lambda = std::stod(f[5]);
            r.B = std::stoul(f[6]);
            r.trials = std::stoul(f[7]);
            r.l_th = std::stoul(f[8]);
            r.max_queries = std::stoull(f[9]);
            r.on_exhaustion = f[10];
            r.decoding_probability = std::stod(f[11]);
            r.decoding_probability_stderr = std::stod(f[12]);
            r.mean_queries = std::stod(f[13]);
            r.mean_additions = std::stod(f[14]);
            r.mean_comparisons = std::stod(f[15]);
            r.mean_transmitted = std::stod(f[16]);
            r.match_probability_by_L = match_map_from_string(f[17]);
            records.push_back(std::move(r));
        }
        if (!header_seen) throw std::runtime_error("parse_results: missing CSV header");
    } else {
        nlohmann::json j;
        in >> j;
        for (const auto& item : j.at("records")) records.push_back(record_from_json(item));
    }
    return records;
}

std::vector<ResultRecord> parse_results_file(const std::string& path, OutputFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("parse_results: cannot open '" + path + "'");
    return parse_results(in, format);
}

}  // namespace tgrand
