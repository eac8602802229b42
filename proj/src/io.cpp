#include "aps/io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <fmt/format.h>

namespace aps {

using nlohmann::json;

namespace {

std::vector<std::string> split_row(const std::string &line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        fields.push_back(line.substr(start, comma - start));
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    if (!fields.empty() && !fields.back().empty() && fields.back().back() == '\r') {
        fields.back().pop_back();
    }
    return fields;
}

double parse_double(const std::string &text) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) {
            throw std::invalid_argument("trailing characters");
        }
        return v;
    } catch (const std::exception &) {
        throw std::invalid_argument("not a number: '" + text + "'");
    }
}

std::size_t parse_count(const std::string &text) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::invalid_argument("not a count: '" + text + "'");
    }
    return v;
}

void expect_header(std::istream &in, const std::string &header) {
    std::string line;
    if (!std::getline(in, line)) {
        throw std::invalid_argument("empty CSV input");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != header) {
        throw std::invalid_argument("unexpected CSV header '" + line + "', wanted '" + header +
                                    "'");
    }
}

void check_width(unsigned &bits, const std::string &bitstring) {
    if (bits == 0) {
        bits = static_cast<unsigned>(bitstring.size());
    } else if (bitstring.size() != bits) {
        throw std::invalid_argument("bitstrings of different widths in one file");
    }
}

} // namespace

std::string format_number(double value) { return fmt::format("{}", value); }

void write_histogram_csv(std::ostream &out, const Histogram &histogram) {
    out << "bitstring,probability\n";
    for (const auto &[x, p] : histogram.ranked()) {
        out << format_bitstring(x, histogram.bits()) << ',' << format_number(p) << '\n';
    }
}

Histogram read_histogram_csv(std::istream &in) {
    expect_header(in, "bitstring,probability");
    unsigned bits = 0;
    std::vector<std::pair<std::size_t, double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") {
            continue;
        }
        const auto fields = split_row(line);
        if (fields.size() != 2) {
            throw std::invalid_argument("histogram rows need two columns");
        }
        check_width(bits, fields[0]);
        rows.emplace_back(parse_bitstring(fields[0]), parse_double(fields[1]));
    }
    if (bits == 0) {
        throw std::invalid_argument("histogram CSV has no rows");
    }
    std::vector<double> probs(std::size_t{1} << bits, 0.0);
    for (const auto &[x, p] : rows) {
        probs[x] = p;
    }
    return Histogram::exact(std::move(probs));
}

json histogram_to_json(const Histogram &histogram) {
    json entries = json::array();
    for (const auto &[x, p] : histogram.ranked()) {
        json row{{"bitstring", format_bitstring(x, histogram.bits())}, {"probability", p}};
        if (!histogram.is_exact()) {
            row["count"] = histogram.counts()[x];
        }
        entries.push_back(std::move(row));
    }
    return json{{"bits", histogram.bits()}, {"shots", histogram.shots()}, {"entries", entries}};
}

Histogram histogram_from_json(const json &doc) {
    try {
        const auto bits = doc.at("bits").get<unsigned>();
        const auto shots = doc.at("shots").get<std::uint64_t>();
        if (bits == 0 || bits > 30) {
            throw std::invalid_argument("histogram width out of range");
        }
        const std::size_t size = std::size_t{1} << bits;
        if (shots > 0) {
            std::vector<std::uint64_t> counts(size, 0);
            for (const auto &row : doc.at("entries")) {
                counts.at(parse_bitstring(row.at("bitstring").get<std::string>())) =
                    row.at("count").get<std::uint64_t>();
            }
            return Histogram::from_counts(std::move(counts));
        }
        std::vector<double> probs(size, 0.0);
        for (const auto &row : doc.at("entries")) {
            probs.at(parse_bitstring(row.at("bitstring").get<std::string>())) =
                row.at("probability").get<double>();
        }
        return Histogram::exact(std::move(probs));
    } catch (const json::exception &e) {
        throw std::invalid_argument(std::string("malformed histogram JSON: ") + e.what());
    } catch (const std::out_of_range &) {
        throw std::invalid_argument("histogram JSON bitstring wider than declared");
    }
}

void write_sweep_csv(std::ostream &out, const SweepResult &result) {
    out << "lambda,kld,iterations,top_state,top_prob\n";
    for (const auto &r : result.records) {
        out << format_number(r.lambda) << ',' << format_number(r.kld) << ',' << r.iterations
            << ',' << format_bitstring(r.top_state, result.work_qubits) << ','
            << format_number(r.top_prob) << '\n';
    }
}

SweepResult read_sweep_csv(std::istream &in) {
    expect_header(in, "lambda,kld,iterations,top_state,top_prob");
    SweepResult result;
    unsigned bits = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") {
            continue;
        }
        const auto f = split_row(line);
        if (f.size() != 5) {
            throw std::invalid_argument("sweep rows need five columns");
        }
        check_width(bits, f[3]);
        result.records.push_back({parse_double(f[0]), parse_double(f[1]), parse_count(f[2]),
                                  parse_bitstring(f[3]), parse_double(f[4])});
    }
    result.work_qubits = bits;
    return result;
}

json sweep_to_json(const SweepResult &result) {
    json records = json::array();
    for (const auto &r : result.records) {
        records.push_back({{"lambda", r.lambda},
                           {"kld", r.kld},
                           {"iterations", r.iterations},
                           {"top_state", format_bitstring(r.top_state, result.work_qubits)},
                           {"top_prob", r.top_prob}});
    }
    return json{{"metadata",
                 {{"work_qubits", result.work_qubits},
                  {"ancilla_qubits", result.ancilla_qubits},
                  {"phase_map", to_string(result.phase_map)},
                  {"schedule_policy", to_string(result.policy)},
                  {"preprocessing_reps", result.preprocessing_reps},
                  {"search_space", result.search_space},
                  {"shots", result.shots},
                  {"seed", result.seed}}},
                {"records", records}};
}

SweepResult sweep_from_json(const json &doc) {
    try {
        const auto &meta = doc.at("metadata");
        SweepResult result;
        result.work_qubits = meta.at("work_qubits").get<unsigned>();
        result.ancilla_qubits = meta.at("ancilla_qubits").get<unsigned>();
        result.phase_map = parse_phase_map_kind(meta.at("phase_map").get<std::string>());
        result.policy = parse_schedule_policy(meta.at("schedule_policy").get<std::string>());
        result.preprocessing_reps = meta.at("preprocessing_reps").get<std::size_t>();
        result.search_space = meta.at("search_space").get<std::size_t>();
        result.shots = meta.at("shots").get<std::uint64_t>();
        result.seed = meta.at("seed").get<std::uint64_t>();
        for (const auto &r : doc.at("records")) {
            const auto state = r.at("top_state").get<std::string>();
            if (state.size() != result.work_qubits) {
                throw std::invalid_argument("top_state width does not match work_qubits");
            }
            result.records.push_back({r.at("lambda").get<double>(), r.at("kld").get<double>(),
                                      r.at("iterations").get<std::size_t>(),
                                      parse_bitstring(state), r.at("top_prob").get<double>()});
        }
        return result;
    } catch (const json::exception &e) {
        throw std::invalid_argument(std::string("malformed sweep JSON: ") + e.what());
    }
}

} // namespace aps
