#include "mcg/labels.hpp"

#include <sstream>

namespace mcg {

std::string_view family_name(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::Aprime: return "A'";
    case Family::B: return "B";
    case Family::C: return "C";
  }
  return "?";
}

std::optional<Family> family_from_name(std::string_view name) {
  if (name == "A") return Family::A;
  if (name == "A'") return Family::Aprime;
  if (name == "B") return Family::B;
  if (name == "C") return Family::C;
  return std::nullopt;
}

std::string to_string(const CurveLabel& c) {
  std::ostringstream out;
  out << family_name(c.family) << '[' << c.genus;
  if (c.end) out << ',' << *c.end;
  out << ']';
  return out.str();
}

std::ostream& operator<<(std::ostream& out, const CurveLabel& c) { return out << to_string(c); }

std::string to_string(const ShiftLabel& h) {
  return "h[" + std::to_string(h.from) + "," + std::to_string(h.to) + "]";
}

}  // namespace mcg
