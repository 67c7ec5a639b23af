#include <random>

#include "doctest.h"
#include "mcg/error.hpp"
#include "mcg/shift_map.hpp"

using mcg::Rational;
using mcg::StripPoint;

namespace {

// Displacement profile min(1, 2 - 2|y|) evaluated on integer fractions p/q.
struct Frac {
  long long p, q;
};

Frac displacement(long long yp, long long yq) {
  long long a = yp < 0 ? -yp : yp;  // |y| = a / yq
  // 2 - 2|y| = (2 yq - 2 a) / yq ; compare with 1 = yq / yq
  long long t = 2 * yq - 2 * a;
  return t >= yq ? Frac{1, 1} : Frac{t, yq};
}

Rational r(long long p, long long q) { return Rational(p) / q; }

}  // namespace

TEST_SUITE("shift_map") {
  TEST_CASE("examples") {
    CHECK(mcg::handle_shift_point({r(0, 1), r(1, 4)}) == StripPoint{r(1, 1), r(1, 4)});
    CHECK(mcg::handle_shift_point({r(0, 1), r(3, 4)}) == StripPoint{r(1, 2), r(3, 4)});
    CHECK(mcg::handle_shift_point({r(0, 1), r(-3, 4)}) == StripPoint{r(1, 2), r(-3, 4)});
    CHECK(mcg::handle_shift_point({r(5, 1), r(1, 1)}) == StripPoint{r(5, 1), r(1, 1)});
    CHECK(mcg::handle_shift_point({r(-7, 3), r(-1, 1)}) == StripPoint{r(-7, 3), r(-1, 1)});
  }

  TEST_CASE("seams agree from both sides") {
    for (int s : {1, -1}) {
      Rational y = r(s, 2);
      auto p = mcg::handle_shift_point({r(2, 7), y});
      CHECK(p.x == r(2, 7) + 1);
      CHECK(p.y == y);
    }
  }

  TEST_CASE("out of domain") {
    CHECK_THROWS_AS(mcg::handle_shift_point({r(0, 1), r(5, 4)}), mcg::Error);
    try {
      mcg::handle_shift_point({r(0, 1), r(-9, 8)});
    } catch (const mcg::Error& e) {
      CHECK(e.code() == mcg::ErrorCode::OutOfDomain);
    }
  }

  TEST_CASE("random rationals match the displacement profile") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<long long> den(1, 97), num(-400, 400);
    for (int k = 0; k < 2000; ++k) {
      long long xq = den(rng), yq = den(rng);
      long long xp = num(rng);
      long long yp = std::uniform_int_distribution<long long>(-yq, yq)(rng);
      auto out = mcg::handle_shift_point({r(xp, xq), r(yp, yq)});
      Frac d = displacement(yp, yq);
      CHECK(out.y == r(yp, yq));
      CHECK(out.x == r(xp, xq) + r(d.p, d.q));
    }
  }

  TEST_CASE("rows are strictly increasing and the map is injective on a grid") {
    std::mt19937 rng(11);
    for (int k = 0; k < 500; ++k) {
      long long q = std::uniform_int_distribution<long long>(1, 40)(rng);
      Rational y = r(std::uniform_int_distribution<long long>(-q, q)(rng), q);
      Rational x1 = r(std::uniform_int_distribution<long long>(-100, 100)(rng), 7);
      Rational x2 = x1 + r(1, std::uniform_int_distribution<long long>(1, 50)(rng));
      CHECK(mcg::handle_shift_point({x1, y}).x < mcg::handle_shift_point({x2, y}).x);
    }
  }

  TEST_CASE("property report") {
    auto rep = mcg::check_shift_properties(8);
    CHECK(rep.passed());
    CHECK(rep.checks.size() >= 5);
    for (const auto& c : rep.checks) CHECK_MESSAGE(c.evaluations > 0, c.name);
  }
}
