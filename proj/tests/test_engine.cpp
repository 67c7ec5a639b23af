#include <random>

#include "doctest.h"
#include "mcg/engine.hpp"
#include "mcg/error.hpp"
#include "mcg/homology.hpp"
#include "mcg/perm.hpp"
#include "mcg/script.hpp"
#include "support.hpp"

using namespace mcg;

namespace {

bool refuted(const Verdict& v) { return v.homology.rfind("refuted", 0) == 0; }

ModelPtr sn(int n) { return make_builtin_model("sn", n); }

const char* kF3 = "A[1,1] C[0,1] C[0,3] B~[1,6] B~[1,8] A'~[1,9] h[13,14]";
const char* kF5 = "A[1,1] C[0,1] C[0,3] C~[0,5] B~[1,8] A'~[1,9] h[13,14]";

}  // namespace

TEST_SUITE("engine") {
  TEST_CASE("free cancellation and identical words") {
    auto m = sn(17);
    CHECK(normalize(parse_word("A[1,1] A~[1,1]", m), 10).word.empty());
    Word w = parse_word(kF3, m);
    CHECK(equivalent(w, w).equal());
  }

  TEST_CASE("conjugation") {
    auto m = sn(17);
    Word w = parse_word(kF3, m);
    CHECK(conjugate(w, Word(m)) == w);
    Word f1 = parse_word("A[1,1] C[0,1] B[1,4] B~[1,6] C~[0,8] A'~[1,9] h[13,14]", m);
    Word f2 = parse_word("A[1,3] C[0,3] B[1,6] B~[1,8] C~[0,10] A'~[1,11] h[15,16]", m);
    CHECK(equivalent(conjugate(f1, parse_word("R^2", m)), f2).equal());
    CHECK(free_reduce(conjugate(f1, parse_word("R^2", m))) == f2);

    Word ab = conjugate(parse_word("A[1,1]", m), parse_word("B[1,1]", m));
    CHECK(equivalent(ab, parse_word("B[1,1] A[1,1] B~[1,1]", m)).equal());
    CHECK(equivalent(ab, parse_word("A~[1,1] B[1,1] A[1,1]", m)).equal());
  }

  TEST_CASE("symmetry pushing") {
    auto m = sn(17);
    Word rho3 = parse_word("R^4 rho1 R~^4", m);
    CHECK(equivalent(rho3 * parse_word("A[1,1]", m) * rho3, parse_word("A'[1,9]", m)).equal());
    for (int j = 1; j <= 17; ++j) {
      Word w = parse_word("R B[1," + std::to_string(j) + "] R~", m);
      CHECK(push_symmetries(w) == parse_word("B[1," + std::to_string(j % 17 + 1) + "]", m));
    }
    Word plain = parse_word(kF3, m);
    CHECK(push_symmetries(plain) == plain);
  }

  TEST_CASE("displayed products") {
    auto m = sn(17);
    Word f3 = parse_word(kF3, m), f5 = parse_word(kF5, m);
    CHECK(equivalent(invert(f3) * f5, parse_word("B[1,6] C~[0,5]", m)).equal());
    CHECK(to_string(normalize(invert(f3) * f5, kDefaultBudget).word) ==
          to_string(normalize(parse_word("B[1,6] C~[0,5]", m), kDefaultBudget).word));

    auto L = make_builtin_model("lochness");
    Word f5d = parse_word("A[8] C[8] C[10] B~[3] B~[5] A~[6]", L);
    Word f6d = parse_word("A[8] C[8] C[10] C~[2] B~[5] A~[6]", L);
    Word f7d = parse_word("A[8] C[8] C[10] B~[2] B~[5] A~[6]", L);
    CHECK(equivalent(f5d * invert(f6d), parse_word("B~[3] C[2]", L)).equal());
    CHECK(equivalent(f6d * invert(f7d), parse_word("C~[2] B[2]", L)).equal());
  }

  TEST_CASE("distinct twists") {
    auto m = sn(17);
    auto v = equivalent(parse_word("A[1,1]", m), parse_word("B[1,1]", m));
    CHECK(v.kind == Verdict::Kind::ProvedDistinct);
    CHECK(v.oracle == "homology");
    auto p = equivalent(parse_word("R", m), Word(m));
    CHECK(p.kind == Verdict::Kind::ProvedDistinct);
  }

  TEST_CASE("involution certificates") {
    auto m = sn(17);
    Word rho3 = parse_word("R^4 rho1 R~^4", m);
    Word f1 = parse_word("A[1,1] C[0,1] B[1,4] B~[1,6] C~[0,8] A'~[1,9] h[13,14]", m);
    CHECK(check_involution(rho3, f1).equal());

    auto J = make_builtin_model("jacob");
    Word tau3 = parse_word("H^6 tau2 H~^6", J);
    CHECK(check_involution(tau3, parse_word("A[1] A'[6] C[1] B[3] B~[11] C~[12] A'~[8] A~[13]", J)).equal());

    auto v = check_involution(parse_word("rho1", m), parse_word("A[1,1]", m));
    CHECK(v.kind == Verdict::Kind::ProvedDistinct);

    try {
      check_involution(parse_word("R", m), f1);
      FAIL("expected NotAnInvolution");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotAnInvolution);
    }
  }

  TEST_CASE("commutation and braid relations hold with a trivial budget") {
    for (auto [kind, n] : {std::pair{"sn", 6}, std::pair{"jacob", 0}, std::pair{"lochness", 0}}) {
      auto m = n ? make_builtin_model(kind, n) : make_builtin_model(kind);
      auto labels = m->labels_in_window(3);
      for (std::size_t i = 0; i < labels.size(); ++i)
        for (std::size_t j = i + 1; j < labels.size(); ++j) {
          Generator a = Generator::twist(labels[i]), b = Generator::twist(labels[j]);
          int k = m->intersection_number(labels[i], labels[j]);
          if (k == 0) {
            CHECK(equivalent(Word(m, {a, b}), Word(m, {b, a}), {100, 8, nullptr}).equal());
          } else if (k == 1) {
            CHECK(equivalent(Word(m, {a, b, a}), Word(m, {b, a, b}), {100, 8, nullptr}).equal());
          }
        }
    }
  }

  TEST_CASE("once-meeting pair: engine against SL(2,Z)") {
    auto m = sn(5);
    Generator a = mcgtest::tw(Family::A, 1, 1), b = mcgtest::tw(Family::B, 1, 1);
    std::mt19937 rng(13);
    auto random_codes = [&] {
      std::vector<int> codes;
      int len = std::uniform_int_distribution<int>(1, 8)(rng);
      for (int i = 0; i < len; ++i) {
        int c = std::uniform_int_distribution<int>(0, 3)(rng);
        codes.push_back(c == 0 ? 1 : c == 1 ? -1 : c == 2 ? 2 : -2);
      }
      return codes;
    };
    auto word_of = [&](const std::vector<int>& codes) {
      std::vector<Generator> L;
      for (int code : codes) {
        Generator g = std::abs(code) == 1 ? a : b;
        g.exponent = code > 0 ? 1 : -1;
        L.push_back(g);
      }
      return Word(m, L);
    };
    EquivalenceOptions opt{20000, 6, nullptr};
    int equal_seen = 0;
    for (int k = 0; k < 300; ++k) {
      auto codes = random_codes();
      // a b a (b a b)~ spliced in anywhere leaves w unchanged
      auto at = static_cast<std::ptrdiff_t>(std::uniform_int_distribution<std::size_t>(0, codes.size())(rng));
      std::vector<int> moved(codes.begin(), codes.begin() + at);
      for (int c : {1, 2, 1, -2, -1, -2}) moved.push_back(c);
      moved.insert(moved.end(), codes.begin() + at, codes.end());
      REQUIRE(mcgtest::sl2_of(moved) == mcgtest::sl2_of(codes));
      auto v = equivalent(word_of(codes), word_of(moved), opt);
      CHECK(v.kind != Verdict::Kind::ProvedDistinct);
      if (v.equal()) ++equal_seen;

      // unrelated pair: equality claims must agree with SL(2,Z)
      auto other = random_codes();
      auto u = equivalent(word_of(codes), word_of(other), opt);
      if (u.equal()) CHECK(mcgtest::sl2_of(codes) == mcgtest::sl2_of(other));
      if (mcgtest::sl2_of(codes) != mcgtest::sl2_of(other)) CHECK(u.kind == Verdict::Kind::ProvedDistinct);
    }
    CHECK(equal_seen > 250);
    CHECK(mcgtest::sl2_of({1, 2, 1}) == mcgtest::sl2_of({2, 1, 2}));
  }

  TEST_CASE("randomized soundness and rotation stability") {
    for (auto [kind, n] : {std::pair{"sn", 16}, std::pair{"sn", 17}, std::pair{"jacob", 0}, std::pair{"lochness", 0}}) {
      auto m = n ? make_builtin_model(kind, n) : make_builtin_model(kind);
      auto oracle = std::make_shared<const HomologyOracle>(m, 12);
      EquivalenceOptions opt{5000, 12, oracle};
      mcgtest::WordGen gen(m, 1000u + static_cast<unsigned>(n));
      for (int k = 0; k < 150; ++k) {
        Word w1 = gen.random_word(gen.uniform(1, 6));
        bool same = k % 2 == 0;
        Word w2 = same ? gen.equal_variant(w1) : gen.random_word(gen.uniform(1, 6));
        auto v = equivalent(w1, w2, opt);
        CHECK_FALSE((v.equal() && refuted(v)));
        if (same) CHECK(v.kind != Verdict::Kind::ProvedDistinct);
        if (v.equal()) {
          CHECK(equivalent(invert(w2) * w1, Word(m), opt).equal());
          if (m->has_ends()) CHECK(project(w1) == project(w2));
        }
      }
    }
  }
}
