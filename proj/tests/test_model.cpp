#include <string>

#include "doctest.h"
#include "mcg/error.hpp"
#include "mcg/model.hpp"
#include "support.hpp"

using namespace mcg;
using mcgtest::lab;

namespace {

// rho3 = R^4 rho1 R^-4 applied to a label, one primitive step at a time.
CurveLabel rho3_label(const SurfaceModel& m, CurveLabel c) {
  int n = *m.n();
  for (int k = 0; k < n - 4; ++k) c = m.apply_symmetry("R", c);
  c = m.apply_symmetry("rho1", c);
  for (int k = 0; k < 4; ++k) c = m.apply_symmetry("R", c);
  return c;
}

}  // namespace

TEST_SUITE("model") {
  TEST_CASE("intersection examples") {
    auto L = make_builtin_model("lochness");
    CHECK(L->intersection_number(lab(Family::B, -3), lab(Family::C, -2)) == 1);
    CHECK(L->intersection_number(lab(Family::B, 3), lab(Family::C, 2)) == 1);
    CHECK(L->intersection_number(lab(Family::C, 2), lab(Family::B, 2)) == 1);
    auto m = make_builtin_model("sn", 17);
    CHECK(m->intersection_number(lab(Family::A, 1, 1), lab(Family::A, 1, 2)) == 0);
    CHECK(m->intersection_number(lab(Family::A, 1, 1), lab(Family::B, 1, 1)) == 1);
    CHECK(m->intersection_number(lab(Family::C, 0, 1), lab(Family::B, 1, 2)) == 1);
    CHECK(m->intersection_number(lab(Family::A, 1, 1), lab(Family::A, 1, 1)) == 0);
  }

  TEST_CASE("label validity") {
    CHECK_FALSE(make_builtin_model("lochness")->valid_label(lab(Family::A, 0)));
    CHECK(make_builtin_model("lochness")->valid_label(lab(Family::C, 0)));
    auto m = make_builtin_model("sn", 17);
    CHECK_FALSE(m->valid_label(lab(Family::A, 1)));
    CHECK_FALSE(m->valid_label(lab(Family::B, 0, 1)));
    CHECK_THROWS_AS(make_builtin_model("sn", 2), Error);
    CHECK_THROWS_AS(m->check_label(lab(Family::A, 0, 1)), Error);
  }

  TEST_CASE("symmetry actions on labels") {
    auto m = make_builtin_model("sn", 17);
    CHECK(rho3_label(*m, lab(Family::A, 1, 1)) == lab(Family::Aprime, 1, 9));
    CHECK(rho3_label(*m, lab(Family::C, 0, 1)) == lab(Family::C, 0, 8));
    CHECK(rho3_label(*m, lab(Family::B, 1, 4)) == lab(Family::B, 1, 6));
    CHECK(m->apply_symmetry("R", m->apply_symmetry("R", lab(Family::A, 1, 1))) == lab(Family::A, 1, 3));
    auto L = make_builtin_model("lochness");
    // H~ = tau2 tau1 on Loch Ness: tau1 acts first
    CHECK(L->apply_symmetry("tau2", L->apply_symmetry("tau1", lab(Family::B, 2))) == lab(Family::B, 1));
  }

  TEST_CASE("symmetry actions on shifts") {
    auto m = make_builtin_model("sn", 17);
    auto [h, s] = m->apply_symmetry_shift("R", ShiftLabel{3, 4});
    auto [h2, s2] = m->apply_symmetry_shift("R", h);
    CHECK(h2 == ShiftLabel{5, 6});
    CHECK(s * s2 == 1);
    for (const char* r : {"rho1", "rho2"}) {
      auto [a, sa] = m->apply_symmetry_shift(r, ShiftLabel{13, 14});
      auto [b, sb] = m->apply_symmetry_shift(r, a);
      CHECK(b == ShiftLabel{13, 14});
      CHECK(sa * sb == 1);
    }
  }

  TEST_CASE("R^n and involutions are the identity on labels") {
    for (int n : {16, 17}) {
      auto m = make_builtin_model("sn", n);
      for (const auto& c : m->labels_in_window(6)) {
        CurveLabel x = c;
        for (int k = 0; k < n; ++k) x = m->apply_symmetry("R", x);
        CHECK(x == c);
        CHECK(m->apply_symmetry("rho1", m->apply_symmetry("rho1", c)) == c);
        CHECK(m->apply_symmetry("rho2", m->apply_symmetry("rho2", c)) == c);
      }
    }
    for (const char* kind : {"jacob", "lochness"}) {
      auto m = make_builtin_model(kind);
      for (const auto& c : m->labels_in_window(10)) {
        CHECK(m->apply_symmetry("tau1", m->apply_symmetry("tau1", c)) == c);
        CHECK(m->apply_symmetry("tau2", m->apply_symmetry("tau2", c)) == c);
      }
    }
  }

  TEST_CASE("shipped models validate at window 20") {
    for (auto [kind, n] : {std::pair{"sn", 16}, std::pair{"sn", 17}, std::pair{"jacob", 0}, std::pair{"lochness", 0}}) {
      auto m = n ? make_builtin_model(kind, n) : make_builtin_model(kind);
      auto rep = validate_model(*m, 20);
      CHECK_MESSAGE(rep.clean(), kind, " ", n);
      CHECK(rep.pairs_checked > 0);
    }
  }

  TEST_CASE("a deleted adjacency is reported") {
    std::string text(builtin_model_text("sn"));
    const std::string line = "meet C[0,j] ~ B[1,j+1]\n";
    auto at = text.find(line);
    REQUIRE(at != std::string::npos);
    text.erase(at, line.size());
    auto m = make_model(text, 17, "broken.model");
    auto rep = validate_model(*m, 20);
    REQUIRE_FALSE(rep.clean());
    CHECK(rep.findings.front().message.find("C[0,") != std::string::npos);
  }

  TEST_CASE("model parse errors carry positions") {
    try {
      make_model("kind sn\nparam n >= 3\nfamily Q >= 1\n", 5, "bad.model");
      FAIL("expected a model error");
    } catch (const Error& e) {
      CHECK(e.pos().line == 3);
      CHECK(e.pos().column > 0);
    }
  }
}
