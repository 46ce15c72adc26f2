#pragma once

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <system_error>
#include <vector>

namespace filter_ergodics {

/// Locale-independent rendering with 17 significant digits.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return res.ec == std::errc() ? std::string(buf, res.ptr) : std::string("nan");
}

class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& header) : out_(out) { write_row(header); }

  CsvWriter& cell(const std::string& s) {
    sep();
    out_ << s;
    return *this;
  }
  CsvWriter& cell(double v) { return cell(format_double(v)); }
  CsvWriter& cell(std::size_t v) { return cell(std::to_string(v)); }
  CsvWriter& cell(std::uint64_t v, int) { return cell(std::to_string(v)); }

  void end_row() {
    out_ << '\n';
    first_ = true;
  }

 private:
  void write_row(const std::vector<std::string>& cells) {
    for (const auto& c : cells) cell(c);
    end_row();
  }
  void sep() {
    if (!first_) out_ << ',';
    first_ = false;
  }

  std::ostream& out_;
  bool first_ = true;
};

}  // namespace filter_ergodics
