#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace flab {

Format parse_format(const std::string& name) {
  if (name == "kv") return Format::kv;
  if (name == "json") return Format::json;
  if (name == "csv") return Format::csv;
  throw std::runtime_error("unknown format '" + name +
                           "' (expected kv, json or csv)");
}

std::string fmt_num(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

void Report::number(std::string key, double v) {
  fields_.push_back({std::move(key), fmt_num(v, precision_),
                     !std::isfinite(v)});
}

void Report::integer(std::string key, long long v) {
  fields_.push_back({std::move(key), std::to_string(v), false});
}

void Report::text(std::string key, std::string v) {
  fields_.push_back({std::move(key), std::move(v), true});
}

void Report::begin_list(std::string name) { list_name_ = std::move(name); }

void Report::list_row() { rows_.emplace_back(); }

void Report::row_number(std::string key, double v) {
  rows_.back().push_back({std::move(key), fmt_num(v, precision_),
                          !std::isfinite(v)});
}

void Report::row_text(std::string key, std::string v) {
  rows_.back().push_back({std::move(key), std::move(v), true});
}

namespace {

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char ch : s) {
    switch (ch) {
    case '"': out += "\\\""; break;
    case '\\': out += "\\\\"; break;
    case '\n': out += "\\n"; break;
    case '\t': out += "\\t"; break;
    default: out += ch;
    }
  }
  return out;
}

} // namespace

void Report::emit(std::ostream& os, Format format) const {
  switch (format) {
  case Format::kv:
  case Format::csv: {
    const char* sep = format == Format::kv ? " = " : ",";
    for (const auto& f : fields_) os << f.key << sep << f.value << "\n";
    for (size_t i = 0; i < rows_.size(); ++i)
      for (const auto& f : rows_[i])
        os << list_name_ << "." << i << "." << f.key << sep << f.value
           << "\n";
    break;
  }
  case Format::json: {
    os << "{\n";
    bool first = true;
    for (const auto& f : fields_) {
      if (!first) os << ",\n";
      first = false;
      os << "  \"" << json_escape(f.key) << "\": ";
      if (f.quoted)
        os << '"' << json_escape(f.value) << '"';
      else
        os << f.value;
    }
    if (!list_name_.empty()) {
      if (!first) os << ",\n";
      first = false;
      os << "  \"" << json_escape(list_name_) << "\": [";
      for (size_t i = 0; i < rows_.size(); ++i) {
        os << (i == 0 ? "\n" : ",\n") << "    {";
        for (size_t j = 0; j < rows_[i].size(); ++j) {
          const auto& f = rows_[i][j];
          if (j != 0) os << ", ";
          os << '"' << json_escape(f.key) << "\": ";
          if (f.quoted)
            os << '"' << json_escape(f.value) << '"';
          else
            os << f.value;
        }
        os << "}";
      }
      os << (rows_.empty() ? "]" : "\n  ]");
    }
    os << "\n}\n";
    break;
  }
  }
}

} // namespace flab
