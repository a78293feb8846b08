#include "caresim/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "caresim/errors.hpp"

namespace caresim {

namespace {

struct CsvRow {
    std::string raw;        // full line as read, without the newline
    std::string time_text;  // first field as written
    double time = 0.0;
    std::optional<double> value;
};

double parse_number(const std::string& text, std::size_t line_no, const char* what) {
    double out = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto res = std::from_chars(begin, end, out);
    if (res.ec != std::errc() || res.ptr != end) {
        throw ParseError("csv line " + std::to_string(line_no) + ": malformed " + what + " '" +
                         text + "'");
    }
    return out;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string current;
    for (char ch : text) {
        if (ch == '\n') {
            lines.push_back(current);
            current.clear();
        } else {
            current.push_back(ch);
        }
    }
    if (!current.empty()) {
        lines.push_back(current);
    }
    return lines;
}

std::vector<CsvRow> parse_series_rows(const std::string& text) {
    const auto lines = split_lines(text);
    if (lines.empty()) {
        throw ParseError("csv: empty document");
    }
    if (lines[0] != "time,value") {
        throw ParseError("csv: expected header 'time,value', got '" + lines[0] + "'");
    }
    std::vector<CsvRow> rows;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::string& line = lines[i];
        if (line.empty()) {
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw ParseError("csv line " + std::to_string(i + 1) + ": expected 'time,value'");
        }
        if (line.find(',', comma + 1) != std::string::npos) {
            throw ParseError("csv line " + std::to_string(i + 1) + ": too many fields");
        }
        CsvRow row;
        row.raw = line;
        row.time_text = line.substr(0, comma);
        row.time = parse_number(row.time_text, i + 1, "time");
        const std::string value_text = line.substr(comma + 1);
        if (!value_text.empty()) {
            row.value = parse_number(value_text, i + 1, "value");
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw ParseError("csv: no data rows");
    }
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (!(rows[i].time > rows[i - 1].time)) {
            throw ParseError("csv: times must be strictly increasing");
        }
    }
    return rows;
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

void atomic_write_file(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) {
            throw std::runtime_error("short write to '" + tmp.string() + "'");
        }
    }
    std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open '" + path.string() + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string trajectory_to_csv(const HealthTrajectory& traj) {
    std::string out = "time,h,r_h,c,clamped\n";
    const bool has_rh = !traj.r_h.empty();
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        out += format_double(traj.times[i]);
        out += ',';
        out += format_double(traj.h[i]);
        out += ',';
        if (has_rh) {
            out += format_double(traj.r_h[i]);
        }
        out += ',';
        out += format_double(traj.c[i]);
        out += ',';
        out += traj.clamped[i] ? '1' : '0';
        out += '\n';
    }
    return out;
}

std::string alerts_to_csv(const std::vector<Alert>& alerts) {
    std::string out = "index,time,direction,statistic\n";
    for (const auto& a : alerts) {
        out += std::to_string(a.index);
        out += ',';
        out += format_double(a.time);
        out += ',';
        out += to_string(a.direction);
        out += ',';
        out += format_double(a.statistic);
        out += '\n';
    }
    return out;
}

TimeSeries parse_timeseries_csv(const std::string& text, const std::string& label) {
    const auto rows = parse_series_rows(text);
    TimeSeries series;
    series.label = label;
    series.times.reserve(rows.size());
    series.values.reserve(rows.size());
    for (const auto& row : rows) {
        series.times.push_back(row.time);
        series.values.push_back(row.value);
    }
    return series;
}

std::string timeseries_to_csv(const TimeSeries& series) {
    std::string out = "time,value\n";
    for (std::size_t i = 0; i < series.times.size(); ++i) {
        out += format_double(series.times[i]);
        out += ',';
        if (series.values[i].has_value()) {
            out += format_double(*series.values[i]);
        }
        out += '\n';
    }
    return out;
}

std::string fill_gaps_csv(const std::string& csv_text, const GapPolicy& policy,
                          std::optional<GpKernel> kernel, std::optional<double> noise_variance) {
    const auto rows = parse_series_rows(csv_text);

    TimeSeries series;
    series.label = "csv";
    for (const auto& row : rows) {
        series.times.push_back(row.time);
        series.values.push_back(row.value);
    }

    const TimeSeries filled = fill_gaps(series, policy, kernel, noise_variance);

    std::string out = "time,value\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].value.has_value() || !filled.values[i].has_value()) {
            out += rows[i].raw;  // observed rows (and left-missing rows) echo byte-identically
        } else {
            out += rows[i].time_text;
            out += ',';
            out += format_double(*filled.values[i]);
        }
        out += '\n';
    }
    return out;
}

}  // namespace caresim
