#include <numeric>
#include <random>

#include "doctest.h"
#include "mcg/error.hpp"
#include "mcg/perm.hpp"
#include "mcg/script.hpp"
#include "support.hpp"

using namespace mcg;
using mcgtest::closure_order;

namespace {

std::vector<int> images_of(const Permutation& p) { return p.images(); }

Permutation random_perm(int n, std::mt19937& rng) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  std::shuffle(v.begin(), v.end(), rng);
  return Permutation(v);
}

long long lcm_of_cycles(const Permutation& p) {
  std::vector<bool> seen(p.degree(), false);
  long long l = 1;
  for (int i = 0; i < p.degree(); ++i) {
    if (seen[i]) continue;
    long long len = 0;
    for (int j = i; !seen[j]; j = p(j)) seen[j] = true, ++len;
    l = std::lcm(l, len);
  }
  return l;
}

}  // namespace

TEST_SUITE("perm") {
  TEST_CASE("group order examples against closure enumeration") {
    std::vector<Permutation> g5{parse_cycles("(1 2 3 4 5)", 5), parse_cycles("(1 2)", 5)};
    CHECK(group_order(g5) == 120);
    CHECK(closure_order({images_of(g5[0]), images_of(g5[1])}, 5) == 120);

    CHECK(group_order({Permutation(5)}) == 1);

    std::vector<Permutation> k4{parse_cycles("(1 2)(3 4)", 4), parse_cycles("(1 3)(2 4)", 4)};
    CHECK(group_order(k4) == 4);
    CHECK(closure_order({images_of(k4[0]), images_of(k4[1])}, 4) == 4);
  }

  TEST_CASE("random generator sets: Schreier-Sims matches closure for n <= 7") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 60; ++trial) {
      int n = std::uniform_int_distribution<int>(2, 7)(rng);
      int k = std::uniform_int_distribution<int>(1, 3)(rng);
      std::vector<Permutation> gens;
      std::vector<std::vector<int>> raw;
      for (int i = 0; i < k; ++i) {
        Permutation p = random_perm(n, rng);
        // bias towards small subgroups
        if (trial % 3 == 0) p = p.pow(std::uniform_int_distribution<int>(1, 4)(rng));
        gens.push_back(p);
        raw.push_back(p.images());
      }
      CHECK(group_order(gens) == BigInt(closure_order(raw, n)));
      StabilizerChain chain(n, gens);
      for (const auto& g : gens) CHECK(chain.contains(g));
      CHECK(chain.contains(gens[0] * gens.back().inverse()));
    }
  }

  TEST_CASE("cyclic groups have the order of their generator") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
      int n = std::uniform_int_distribution<int>(1, 20)(rng);
      Permutation p = random_perm(n, rng);
      CHECK(group_order({p}) == lcm_of_cycles(p));
      CHECK(p.order() == lcm_of_cycles(p));
    }
  }

  TEST_CASE("certificates") {
    auto six = certify_full_symmetric({rotation(6)}, 6);
    CHECK_FALSE(six.full);
    CHECK(six.order == 6);
    for (int n : {16, 17}) {
      auto m = make_builtin_model("sn", n);
      auto cert = certify_full_symmetric({project(parse_word("R", m)), project(parse_word("tau", m))}, n);
      CHECK(cert.full);
      CHECK(cert.order == factorial(n));
    }
    CHECK(factorial(16) == BigInt("20922789888000"));
    CHECK(factorial(17) == BigInt("355687428096000"));
  }

  TEST_CASE("projection examples") {
    auto m = make_builtin_model("sn", 17);
    CHECK(project(parse_word("A[1,1] C[0,1] B[1,4] h[3,4]", m)).is_identity());
    CHECK(project(parse_word("R", m)) == rotation(17));
    CHECK(to_string(project(parse_word("tau", m))) == "(1 2)");
    auto m5 = make_builtin_model("sn", 5);
    CHECK(to_string(project(parse_word("R^3 tau", m5))) == "(1 5 3)(2 4)");
    CHECK_THROWS_AS(project(parse_word("tau1", make_builtin_model("jacob"))), Error);
  }

  TEST_CASE("projection is a homomorphism") {
    for (int n : {5, 16, 17}) {
      mcgtest::WordGen gen(make_builtin_model("sn", n), 100 + n);
      for (int k = 0; k < 200; ++k) {
        Word a = gen.random_word(gen.uniform(0, 8));
        Word b = gen.random_word(gen.uniform(0, 8));
        CHECK(project(a * b) == project(a) * project(b));
        CHECK(project(invert(a)) == project(a).inverse());
      }
    }
  }

  TEST_CASE("cycle notation") {
    CHECK(to_string(parse_cycles("()", 4)) == "()");
    CHECK(to_string(parse_cycles("(3 1)(4 2)", 4)) == "(1 3)(2 4)");
    CHECK_THROWS_AS(parse_cycles("(1 2", 4), Error);
    CHECK_THROWS_AS(parse_cycles("(1 5)", 4), Error);
    CHECK_THROWS_AS(parse_cycles("(1 2 1)", 4), Error);
    CHECK_THROWS_AS(Permutation(std::vector<int>{0, 0, 1}), Error);
  }
}
