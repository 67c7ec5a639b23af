#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace mcg {

using Rational = boost::multiprecision::cpp_rational;

/// Point of the strip R x [-1, 1].
struct StripPoint {
  Rational x;
  Rational y;

  friend bool operator==(const StripPoint&, const StripPoint&) = default;
};

std::string to_string(const StripPoint& p);

/// Piecewise-linear handle shift of the strip: the core band |y| <= 1/2 moves
/// one unit to the right, the outer bands taper to the fixed boundary.
/// Throws OutOfDomain when |y| > 1.
StripPoint handle_shift_point(const StripPoint& p);

struct ShiftCheck {
  std::string name;
  bool passed = true;
  std::size_t evaluations = 0;
  std::string detail;  // first failure, if any
};

struct ShiftReport {
  std::vector<ShiftCheck> checks;
  bool passed() const;
};

/// Exact checks on a grid with `samples` points per unit: seams y = +-1/2,
/// fixed boundary rows, unit displacement on the core band, and strict
/// monotonicity in x along each sampled row.
ShiftReport check_shift_properties(int samples);

std::string format_report(const ShiftReport& r);

}  // namespace mcg
