#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace flab {

enum class Format { kv, json, csv };

Format parse_format(const std::string& name); // throws std::runtime_error

/// Round-trip-safe decimal rendering: %.Ng with N significant digits.
std::string fmt_num(double v, int precision);

/// Flat key-value report with one optional list section (e.g. events).
/// Emission is byte-deterministic for identical content and precision.
class Report {
public:
  explicit Report(int precision) : precision_(precision) {}

  void number(std::string key, double v);
  void integer(std::string key, long long v);
  void text(std::string key, std::string v);

  void begin_list(std::string name);
  void list_row();
  void row_number(std::string key, double v);
  void row_text(std::string key, std::string v);

  void emit(std::ostream& os, Format format) const;

  int precision() const { return precision_; }

private:
  struct Field {
    std::string key;
    std::string value;
    bool quoted;
  };

  int precision_;
  std::vector<Field> fields_;
  std::string list_name_;
  std::vector<std::vector<Field>> rows_;
};

} // namespace flab
