#pragma once

#include "cohomkit/errors.hpp"
#include "cohomkit/integer.hpp"

#include <string>

namespace cohomkit {

/// Coefficient ring Z (value 0) or Z/m with m >= 2.
class Modulus {
 public:
  Modulus() = default;

  static Modulus integers() { return Modulus(); }
  static Modulus of(const Integer& m) {
    if (m == 0) return Modulus();
    if (m < 2) throw InvalidArgument("modulus must be >= 2 or Z, got " + m.str());
    Modulus out;
    out.value_ = m;
    return out;
  }

  /// Parses "Z", "Z/m" or a bare integer m.
  static Modulus parse(const std::string& text) {
    if (text == "Z" || text == "z") return integers();
    std::string digits = text;
    if (digits.rfind("Z/", 0) == 0 || digits.rfind("z/", 0) == 0) digits = digits.substr(2);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw InvalidArgument("cannot parse coefficient ring '" + text + "'");
    return of(Integer(digits));
  }

  bool is_integral() const { return value_ == 0; }
  const Integer& value() const { return value_; }

  Integer reduce(const Integer& a) const { return is_integral() ? a : mod_floor(a, value_); }

  std::string str() const { return is_integral() ? "Z" : "Z/" + value_.str(); }

  friend bool operator==(const Modulus& a, const Modulus& b) { return a.value_ == b.value_; }
  friend bool operator!=(const Modulus& a, const Modulus& b) { return !(a == b); }

 private:
  Integer value_ = 0;
};

}  // namespace cohomkit
