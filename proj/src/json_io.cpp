#include "qlra/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace qlra::jsonio {

std::string format_double(double v) {
  if (!std::isfinite(v)) {
    throw SchemaError("cannot serialize non-finite number");
  }
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void Writer::before_value() {
  if (stack_.empty()) return;
  Frame& top = stack_.back();
  if (top.array) {
    if (top.items > 0) os_ << ',';
    ++top.items;
  } else {
    // inside an object a key() must have been emitted first
    if (!key_pending_) throw SchemaError("json writer: value without key");
    key_pending_ = false;
  }
}

Writer& Writer::obj_open() {
  before_value();
  os_ << '{';
  stack_.push_back({false, 0});
  return *this;
}

Writer& Writer::obj_close() {
  stack_.pop_back();
  os_ << '}';
  return *this;
}

Writer& Writer::arr_open() {
  before_value();
  os_ << '[';
  stack_.push_back({true, 0});
  return *this;
}

Writer& Writer::arr_close() {
  stack_.pop_back();
  os_ << ']';
  return *this;
}

Writer& Writer::key(std::string_view k) {
  Frame& top = stack_.back();
  if (top.items > 0) os_ << ',';
  ++top.items;
  os_ << '"' << k << "\":";
  key_pending_ = true;
  return *this;
}

Writer& Writer::num(double v) {
  before_value();
  os_ << format_double(v);
  return *this;
}

Writer& Writer::integer(std::uint64_t v) {
  before_value();
  os_ << v;
  return *this;
}

Writer& Writer::boolean(bool b) {
  before_value();
  os_ << (b ? "true" : "false");
  return *this;
}

Writer& Writer::str(std::string_view s) {
  before_value();
  os_ << '"';
  for (char c : s) {
    switch (c) {
      case '"': os_ << "\\\""; break;
      case '\\': os_ << "\\\\"; break;
      case '\n': os_ << "\\n"; break;
      case '\t': os_ << "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          os_ << buf;
        } else {
          os_ << c;
        }
    }
  }
  os_ << '"';
  return *this;
}

void Writer::finish() { os_ << '\n'; }

Writer& Writer::num_array(const double* v, int n) {
  arr_open();
  for (int k = 0; k < n; ++k) num(v[k]);
  return arr_close();
}

Writer& Writer::vec3(const Vec3& v) { return num_array(v.data(), 3); }

Writer& Writer::mat3(const Mat3& m) {
  arr_open();
  for (const auto& row : m) num_array(row.data(), 3);
  return arr_close();
}

}  // namespace qlra::jsonio
