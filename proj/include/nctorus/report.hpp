#pragma once

// Deterministic report serialization. Field order is insertion order and
// floats are always printed with 17 significant digits, so identical inputs
// produce byte-identical output.

#include <cstdio>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nctorus/spectra.hpp"

namespace nctorus {

inline constexpr const char* kToolVersion = "1.0.0";

inline std::string format_g17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

/// Minimal ordered JSON value (objects keep insertion order).
class Json {
 public:
  Json() : value_(nullptr) {}
  Json(bool b) : value_(b) {}
  Json(int i) : value_(static_cast<long long>(i)) {}
  Json(long i) : value_(static_cast<long long>(i)) {}
  Json(long long i) : value_(i) {}
  Json(double d) : value_(d) {}
  Json(const char* s) : value_(std::string(s)) {}
  Json(std::string s) : value_(std::move(s)) {}

  static Json object() {
    Json j;
    j.value_ = Object{};
    return j;
  }
  static Json array() {
    Json j;
    j.value_ = Array{};
    return j;
  }

  Json& set(const std::string& key, Json v) {
    std::get<Object>(value_).emplace_back(key, std::move(v));
    return *this;
  }
  Json& push(Json v) {
    std::get<Array>(value_).push_back(std::move(v));
    return *this;
  }

  std::string dump(int indent = 2) const {
    std::string out;
    write(out, indent, 0);
    out.push_back('\n');
    return out;
  }

 private:
  struct Object;
  struct Array;
  using Value =
      std::variant<std::nullptr_t, bool, long long, double, std::string, Object, Array>;
  struct Object : std::vector<std::pair<std::string, Json>> {};
  struct Array : std::vector<Json> {};

  Value value_;

  static void write_escaped(std::string& out, const std::string& s) {
    out.push_back('"');
    for (char c : s) {
      switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\r': out += "\\r"; break;
        default:
          if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof(buf), "\\u%04x", c);
            out += buf;
          } else {
            out.push_back(c);
          }
      }
    }
    out.push_back('"');
  }

  void write(std::string& out, int indent, int level) const {
    const std::string pad(static_cast<std::size_t>(indent * level), ' ');
    const std::string pad1(static_cast<std::size_t>(indent * (level + 1)), ' ');
    if (std::holds_alternative<std::nullptr_t>(value_)) {
      out += "null";
    } else if (std::holds_alternative<bool>(value_)) {
      out += std::get<bool>(value_) ? "true" : "false";
    } else if (std::holds_alternative<long long>(value_)) {
      out += std::to_string(std::get<long long>(value_));
    } else if (std::holds_alternative<double>(value_)) {
      out += format_g17(std::get<double>(value_));
    } else if (std::holds_alternative<std::string>(value_)) {
      write_escaped(out, std::get<std::string>(value_));
    } else if (std::holds_alternative<Object>(value_)) {
      const auto& obj = std::get<Object>(value_);
      if (obj.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      for (std::size_t i = 0; i < obj.size(); ++i) {
        out += pad1;
        write_escaped(out, obj[i].first);
        out += ": ";
        obj[i].second.write(out, indent, level + 1);
        if (i + 1 < obj.size()) out.push_back(',');
        out.push_back('\n');
      }
      out += pad + "}";
    } else {
      const auto& arr = std::get<Array>(value_);
      if (arr.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < arr.size(); ++i) {
        out += pad1;
        arr[i].write(out, indent, level + 1);
        if (i + 1 < arr.size()) out.push_back(',');
        out.push_back('\n');
      }
      out += pad + "]";
    }
  }
};

/// CSV with header `eigenvalue,multiplicity`, ascending eigenvalues.
inline std::string spectrum_to_csv(const SpectrumTable& t) {
  std::string out = "eigenvalue,multiplicity\n";
  for (std::size_t i = 0; i < t.eigenvalues.size(); ++i) {
    out += format_g17(t.eigenvalues[i]);
    out.push_back(',');
    out += std::to_string(t.multiplicities[i]);
    out.push_back('\n');
  }
  return out;
}

}  // namespace nctorus
