#pragma once

#include <compare>
#include <optional>
#include <ostream>
#include <string>
#include <tuple>

namespace mcg {

/// Curve families of the standard curve system. Aprime is the mirror
/// family a' that the reflections exchange with a.
enum class Family { A, Aprime, B, C };

std::string_view family_name(Family f);
std::optional<Family> family_from_name(std::string_view name);

/// A named simple closed curve. `end` is present exactly on S(n) models;
/// single-line models (Jacob's ladder, Loch Ness) index curves by `genus` alone.
struct CurveLabel {
  Family family = Family::A;
  int genus = 0;
  std::optional<int> end;

  // Total order (end, genus, family) used for commutation sorting.
  friend std::strong_ordering operator<=>(const CurveLabel& x, const CurveLabel& y) {
    auto key = [](const CurveLabel& c) {
      return std::tuple(c.end.value_or(0), c.genus, static_cast<int>(c.family));
    };
    return key(x) <=> key(y);
  }
  friend bool operator==(const CurveLabel&, const CurveLabel&) = default;
};

std::string to_string(const CurveLabel& c);
std::ostream& operator<<(std::ostream& out, const CurveLabel& c);

/// Handle shift h_{from,to}: repelling end `from`, attracting end `to`.
struct ShiftLabel {
  int from = 1;
  int to = 2;

  friend auto operator<=>(const ShiftLabel&, const ShiftLabel&) = default;
};

std::string to_string(const ShiftLabel& h);

}  // namespace mcg
