#include "mcg/shift_map.hpp"

#include <optional>
#include <sstream>

#include "mcg/error.hpp"

namespace mcg {

namespace {

const Rational kHalf(1, 2);

std::string str(const Rational& q) {
  std::ostringstream out;
  out << q;
  return out.str();
}

// Branches of the formula, each evaluated on its own.
Rational upper(const StripPoint& p) { return p.x + 2 - 2 * p.y; }
Rational core(const StripPoint& p) { return p.x + 1; }
Rational lower(const StripPoint& p) { return p.x + 2 + 2 * p.y; }

}  // namespace

std::string to_string(const StripPoint& p) { return "(" + str(p.x) + ", " + str(p.y) + ")"; }

StripPoint handle_shift_point(const StripPoint& p) {
  if (p.y > 1 || p.y < -1) throw Error(ErrorCode::OutOfDomain, "y = " + str(p.y) + " lies outside [-1, 1]");
  if (p.y >= kHalf) return {upper(p), p.y};
  if (p.y <= -kHalf) return {lower(p), p.y};
  return {core(p), p.y};
}

bool ShiftReport::passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

ShiftReport check_shift_properties(int samples) {
  if (samples < 1) samples = 1;
  ShiftReport report;
  // x runs over [-2, 2], y over [-1, 1], both in steps of 1/samples.
  std::vector<Rational> xs, ys;
  for (int k = -2 * samples; k <= 2 * samples; ++k) xs.emplace_back(k, samples);
  for (int k = -samples; k <= samples; ++k) ys.emplace_back(k, samples);

  auto fail = [](ShiftCheck& c, const std::string& msg) {
    if (c.passed) c.detail = msg;
    c.passed = false;
  };

  ShiftCheck seams;
  seams.name = "seams y = +-1/2 agree";
  for (const auto& x : xs) {
    StripPoint top{x, kHalf}, bottom{x, -kHalf};
    seams.evaluations += 4;
    if (upper(top) != core(top)) fail(seams, "upper vs core at " + to_string(top));
    if (lower(bottom) != core(bottom)) fail(seams, "lower vs core at " + to_string(bottom));
  }
  report.checks.push_back(seams);

  ShiftCheck boundary;
  boundary.name = "boundary rows fixed";
  for (const auto& x : xs) {
    for (const Rational& y : {Rational(1), Rational(-1)}) {
      StripPoint p{x, y};
      ++boundary.evaluations;
      if (handle_shift_point(p) != p) fail(boundary, to_string(p) + " -> " + to_string(handle_shift_point(p)));
    }
  }
  report.checks.push_back(boundary);

  ShiftCheck displacement;
  displacement.name = "core displacement is 1";
  for (const auto& y : ys) {
    if (y > kHalf || y < -kHalf) continue;
    for (const auto& x : xs) {
      StripPoint p{x, y};
      ++displacement.evaluations;
      StripPoint q = handle_shift_point(p);
      if (q.x - p.x != 1 || q.y != p.y) fail(displacement, to_string(p) + " -> " + to_string(q));
    }
  }
  report.checks.push_back(displacement);

  ShiftCheck monotone;
  monotone.name = "rows strictly increasing";
  for (const auto& y : ys) {
    std::optional<Rational> prev;
    for (const auto& x : xs) {
      StripPoint q = handle_shift_point({x, y});
      ++monotone.evaluations;
      if (q.y != y) fail(monotone, "row " + str(y) + " not preserved");
      if (prev && q.x <= *prev) fail(monotone, "row " + str(y) + " not increasing at x = " + str(x));
      prev = q.x;
    }
  }
  report.checks.push_back(monotone);

  ShiftCheck domain;
  domain.name = "out-of-domain rejected";
  for (const Rational& y : {Rational(5, 4), Rational(-5, 4)}) {
    ++domain.evaluations;
    try {
      handle_shift_point({0, y});
      fail(domain, "y = " + str(y) + " accepted");
    } catch (const Error& e) {
      if (e.code() != ErrorCode::OutOfDomain) fail(domain, "wrong error code");
    }
  }
  report.checks.push_back(domain);
  return report;
}

std::string format_report(const ShiftReport& r) {
  std::ostringstream out;
  for (const auto& c : r.checks) {
    out << (c.passed ? "ok   " : "FAIL ") << c.name << " (" << c.evaluations << " evaluations)";
    if (!c.passed) out << ": " << c.detail;
    out << "\n";
  }
  out << (r.passed() ? "shift map: all checks pass\n" : "shift map: FAILED\n");
  return out.str();
}

}  // namespace mcg
