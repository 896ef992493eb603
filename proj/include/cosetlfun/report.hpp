#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace cosetlfun {

// One brute-force vs closed-form comparison.
struct VerificationReport {
  std::string instance;
  std::complex<double> brute;
  std::complex<double> closed;
  double abs_err = 0.0;
  double rel_err = 0.0;
  double micros = 0.0;

  static VerificationReport compare(std::string instance, std::complex<double> brute, std::complex<double> closed,
                                    double micros = 0.0) {
    const double abs_err = std::abs(brute - closed);
    const double scale = std::max(std::abs(brute), std::abs(closed));
    const double rel_err = scale > 0.0 ? abs_err / scale : abs_err;
    return {std::move(instance), brute, closed, abs_err, rel_err, micros};
  }
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double micros() const {
    return std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

namespace text {

/// Shortest round-trip form is not stable across libraries; 17 significant digits is.
inline std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string num(long long x) { return std::to_string(x); }
inline std::string num(long x) { return std::to_string(x); }
inline std::string num(int x) { return std::to_string(x); }

/// RFC-4180 field quoting.
inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

inline std::string json_string(std::string_view s) {
  std::string out = "\"";
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  out += '"';
  return out;
}

}  // namespace text

enum class Format { csv, jsonl };

// A flat table of pre-formatted cells; rendered as CSV or JSON lines. Cells
// flagged numeric are emitted bare in JSON, everything else as strings.
class Table {
 public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  struct Cell {
    std::string text;
    bool numeric = true;
  };

  void add_row(std::vector<Cell> row) { rows_.push_back(std::move(row)); }

  const std::vector<std::string>& columns() const noexcept { return columns_; }
  std::size_t size() const noexcept { return rows_.size(); }

  void write(std::ostream& os, Format format) const {
    if (format == Format::csv) {
      for (std::size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << text::csv_field(columns_[i]);
      os << '\n';
      for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << text::csv_field(row[i].text);
        os << '\n';
      }
      return;
    }
    for (const auto& row : rows_) {
      os << '{';
      for (std::size_t i = 0; i < row.size(); ++i) {
        os << (i ? "," : "") << text::json_string(columns_[i]) << ':';
        if (row[i].numeric && row[i].text != "nan" && row[i].text != "inf" && row[i].text != "-inf") {
          os << row[i].text;
        } else {
          os << text::json_string(row[i].text);
        }
      }
      os << "}\n";
    }
  }

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

inline Table::Cell text_cell(std::string s) { return {std::move(s), false}; }
inline Table::Cell num_cell(double x) { return {text::num(x), true}; }
inline Table::Cell int_cell(long long x) { return {text::num(x), true}; }

/// Complex numbers render as "re+imi" in CSV-compatible text.
inline Table::Cell complex_cell(std::complex<double> z) {
  return text_cell(text::num(z.real()) + (std::signbit(z.imag()) ? "" : "+") + text::num(z.imag()) + "i");
}

inline Table verification_table(const std::vector<VerificationReport>& reports, bool with_timing) {
  Table t({"instance", "brute", "closed", "abs_err", "rel_err", "micros"});
  for (const auto& r : reports) {
    t.add_row({text_cell(r.instance), complex_cell(r.brute), complex_cell(r.closed), num_cell(r.abs_err),
               num_cell(r.rel_err), num_cell(with_timing ? r.micros : 0.0)});
  }
  return t;
}

}  // namespace cosetlfun
