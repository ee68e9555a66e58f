#include "combopred/csv_io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>

namespace combopred {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) {
        fields.push_back(trim(field));
    }
    if (!line.empty() && line.back() == ',') fields.emplace_back("");
    return fields;
}

double parse_number(const std::string& field, const std::string& path, std::size_t data_row) {
    const std::string t = trim(field);
    double value = 0.0;
    const char* begin = t.data();
    const char* end = begin + t.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || t.empty()) {
        std::ostringstream msg;
        msg << path << ": cannot parse '" << field << "' as a number at data row " << data_row;
        throw ParseError(msg.str());
    }
    return value;
}

// Reads data lines, skipping blanks and '#' comments; checks the header.
std::vector<std::vector<std::string>> read_rows(const std::string& path,
                                                const std::vector<std::string>& accepted_headers,
                                                std::string* header_out) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError(path + ": cannot open file");
    }
    std::string line;
    bool have_header = false;
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (!have_header) {
            bool ok = false;
            for (const auto& h : accepted_headers) {
                if (t == h) {
                    ok = true;
                    if (header_out) *header_out = h;
                    break;
                }
            }
            if (!ok) {
                throw ParseError(path + ": unexpected header '" + t + "'");
            }
            have_header = true;
            continue;
        }
        rows.push_back(split_fields(t));
    }
    if (!have_header) {
        throw ParseError(path + ": empty file (no header)");
    }
    if (rows.empty()) {
        throw ParseError(path + ": no data rows");
    }
    return rows;
}

} // namespace

SurvivalCsv load_survival_csv(const std::string& path) {
    std::string header;
    const auto rows = read_rows(path,
                                {"time_months,survival_prob", "time_months,survival_prob,survival_se"},
                                &header);
    const bool with_se = header == "time_months,survival_prob,survival_se";
    SurvivalCsv out;
    std::size_t data_row = 0;
    for (const auto& fields : rows) {
        ++data_row;
        const std::size_t expected = with_se ? 3 : 2;
        if (fields.size() != expected) {
            std::ostringstream msg;
            msg << path << ": expected " << expected << " columns at data row " << data_row;
            throw ParseError(msg.str());
        }
        const double t = parse_number(fields[0], path, data_row);
        const double p = parse_number(fields[1], path, data_row);
        if (t < 0.0) {
            std::ostringstream msg;
            msg << path << ": negative time at data row " << data_row;
            throw InvariantViolation(msg.str());
        }
        if (!(p >= 0.0 && p <= 1.0)) {
            std::ostringstream msg;
            msg << path << ": survival_prob outside [0,1] at data row " << data_row;
            throw InvariantViolation(msg.str());
        }
        if (!out.curve.times.empty()) {
            if (t <= out.curve.times.back()) {
                std::ostringstream msg;
                msg << path << ": times not strictly increasing at data row " << data_row;
                throw InvariantViolation(msg.str());
            }
            if (p > out.curve.probs.back()) {
                std::ostringstream msg;
                msg << path << ": survival_prob increases at data row " << data_row;
                throw InvariantViolation(msg.str());
            }
        }
        out.curve.times.push_back(t);
        out.curve.probs.push_back(p);
        if (with_se) {
            const double se = parse_number(fields[2], path, data_row);
            if (se < 0.0) {
                std::ostringstream msg;
                msg << path << ": negative survival_se at data row " << data_row;
                throw InvariantViolation(msg.str());
            }
            out.se.push_back(se);
        }
    }
    if (out.curve.times.front() != 0.0) {
        out.curve.times.insert(out.curve.times.begin(), 0.0);
        out.curve.probs.insert(out.curve.probs.begin(), 1.0);
        if (with_se) out.se.insert(out.se.begin(), 0.0);
        out.zero_inserted = true;
    } else if (out.curve.probs.front() != 1.0) {
        throw InvariantViolation(path + ": survival_prob at t = 0 must be 1");
    }
    out.curve.validate();
    return out;
}

WaterfallSample load_waterfall_csv(const std::string& path) {
    const auto rows = read_rows(path, {"pchg"}, nullptr);
    WaterfallSample out;
    std::size_t data_row = 0;
    for (const auto& fields : rows) {
        ++data_row;
        if (fields.size() != 1) {
            std::ostringstream msg;
            msg << path << ": expected a single column at data row " << data_row;
            throw ParseError(msg.str());
        }
        const double v = parse_number(fields[0], path, data_row);
        if (v < -100.0) {
            std::ostringstream msg;
            msg << path << ": pchg value " << v << " below -100 at data row " << data_row;
            throw InvariantViolation(msg.str());
        }
        out.values.push_back(v);
    }
    out.validate();
    return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw ParseError("cannot open " + tmp.string() + " for writing");
        }
        out << content;
        out.flush();
        if (!out) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw ParseError("failed while writing " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw ParseError("cannot move temporary file onto " + path);
    }
}

} // namespace combopred
