#pragma once

#include <charconv>
#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "pidkit/error.hpp"

namespace pidkit {

/// One problem found in an input file. `line` is 1-based, 0 for file-level issues.
struct Diagnostic {
    std::string file;
    std::size_t line = 0;
    std::string message;
};

using Diagnostics = std::vector<Diagnostic>;

inline std::string format_diagnostic(const Diagnostic& d) {
    std::string out = d.file;
    if (d.line > 0) out += ":" + std::to_string(d.line);
    return out + ": " + d.message;
}

/// Routes problems either into a diagnostics list or straight into a thrown ValidationError.
class IssueSink {
public:
    IssueSink(std::string file, Diagnostics* collect) : file_(std::move(file)), collect_(collect) {}

    void report(std::size_t line, const std::string& message) {
        Diagnostic d{file_, line, message};
        if (!collect_) throw ValidationError(format_diagnostic(d));
        collect_->push_back(std::move(d));
        ++count_;
    }

    bool collecting() const noexcept { return collect_ != nullptr; }
    std::size_t count() const noexcept { return count_; }
    const std::string& file() const noexcept { return file_; }

private:
    std::string file_;
    Diagnostics* collect_;
    std::size_t count_ = 0;
};

struct CsvRow {
    std::size_t line = 0;
    std::vector<std::string> fields;
};

struct CsvFile {
    std::string path;
    std::vector<std::string> header;
    std::vector<CsvRow> rows;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string> split_fields(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        std::size_t comma = line.find(',', start);
        out.emplace_back(trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace detail

/// Reads a comma-separated file with a header line. Blank lines are skipped.
/// Throws ValidationError when the file is missing or has no header.
inline CsvFile read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    if (text.size() >= 3 && text.compare(0, 3, "\xEF\xBB\xBF") == 0) text.erase(0, 3);

    CsvFile file;
    file.path = path;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    bool have_header = false;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line(text.data() + pos, (nl == std::string::npos ? text.size() : nl) - pos);
        pos = nl == std::string::npos ? text.size() : nl + 1;
        ++line_no;
        if (detail::trim(line).empty()) continue;
        if (!have_header) {
            file.header = detail::split_fields(line);
            have_header = true;
        } else {
            file.rows.push_back({line_no, detail::split_fields(line)});
        }
    }
    if (!have_header) throw ValidationError(path + ": empty file");
    return file;
}

/// Checks the header against an expected column list.
inline bool header_is(const CsvFile& f, const std::vector<std::string>& cols) { return f.header == cols; }

inline std::string join_columns(const std::vector<std::string>& cols) {
    std::string out;
    for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + cols[i];
    return out;
}

inline std::optional<double> parse_double(std::string_view s) {
    if (s.empty()) return std::nullopt;
    if (s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    if (v != v || v - v != 0.0) return std::nullopt;  // nan, inf
    return v;
}

inline std::optional<long long> parse_int(std::string_view s) {
    if (s.empty()) return std::nullopt;
    if (s.front() == '+') s.remove_prefix(1);
    long long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

/// Shortest text that parses back to the same double.
inline std::string exact_number(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

}  // namespace pidkit
