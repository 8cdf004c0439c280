#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "qlra/common.hpp"

namespace qlra::jsonio {

// Formats a finite double with 17 significant digits (round-trip exact).
// Throws SchemaError on non-finite values.
std::string format_double(double v);

// Minimal streaming JSON writer with caller-controlled key order and fixed
// number formatting, so identical values always serialize to identical bytes.
// Output is a single line; finish() appends the trailing newline.
class Writer {
 public:
  explicit Writer(std::ostream& os) : os_(os) {}

  Writer& obj_open();
  Writer& obj_close();
  Writer& arr_open();
  Writer& arr_close();
  Writer& key(std::string_view k);
  Writer& num(double v);
  Writer& integer(std::uint64_t v);
  Writer& boolean(bool b);
  Writer& str(std::string_view s);
  void finish();

  // convenience for fixed-size blocks
  Writer& num_array(const double* v, int n);
  Writer& vec3(const Vec3& v);
  Writer& mat3(const Mat3& m);

 private:
  void before_value();
  std::ostream& os_;
  struct Frame {
    bool array = false;
    int items = 0;
  };
  std::vector<Frame> stack_;
  bool key_pending_ = false;
};

}  // namespace qlra::jsonio
