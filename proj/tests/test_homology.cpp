#include "doctest.h"
#include "mcg/engine.hpp"
#include "mcg/error.hpp"
#include "mcg/homology.hpp"
#include "mcg/script.hpp"
#include "support.hpp"

using namespace mcg;
using mcgtest::DenseHomology;

namespace {

DenseHomology::Mat dense_of(const IntMatrix& M, const TruncatedBasis& basis, const DenseHomology& d) {
  REQUIRE(basis.dim() == d.dim());
  DenseHomology::Mat out(d.dim(), std::vector<long long>(d.dim(), 0));
  for (int j = 0; j < d.dim(); ++j)
    for (const auto& [i, v] : M.column(j)) out[i][j] = v;
  return out;
}

bool same_basis_order(const SurfaceModel& m, const TruncatedBasis& basis, int window) {
  auto hs = m.handles(window);
  if (hs.size() != basis.handles().size()) return false;
  for (std::size_t k = 0; k < hs.size(); ++k)
    if (basis.handle_index(hs[k]) != static_cast<int>(k)) return false;
  return true;
}

}  // namespace

TEST_SUITE("homology") {
  TEST_CASE("transvection on a symplectic pair") {
    auto m = make_builtin_model("sn", 3);
    HomologyOracle o(m, 2);
    auto a = *o.basis().class_of(mcgtest::lab(Family::A, 1, 1));
    auto b = *o.basis().class_of(mcgtest::lab(Family::B, 1, 1));
    CHECK(o.basis().pairing(a, b) == 1);
    IntMatrix T = o.twist_matrix(mcgtest::lab(Family::A, 1, 1));
    CHECK(*T.apply(a) == a);
    CHECK(*T.apply(b) == add_scaled(b, 1, a));
    // disjoint strand untouched
    auto a3 = *o.basis().class_of(mcgtest::lab(Family::A, 2, 3));
    CHECK(*T.apply(a3) == a3);
    CHECK(transvection_self_test(o).empty());
  }

  TEST_CASE("twist matrices agree with the dense oracle") {
    for (auto [kind, n, window] : {std::tuple{"sn", 5, 3}, std::tuple{"jacob", 0, 5}, std::tuple{"lochness", 0, 5}}) {
      auto m = n ? make_builtin_model(kind, n) : make_builtin_model(kind);
      HomologyOracle o(m, window);
      DenseHomology d(*m, window);
      REQUIRE(same_basis_order(*m, o.basis(), window));
      mcgtest::WordGen gen(m, 41);
      gen.max_genus = 2;
      gen.symmetries = gen.shifts = false;
      for (int k = 0; k < 60; ++k) {
        Word w = gen.random_word(gen.uniform(0, 6));
        auto dm = d.word(w);
        if (!dm) continue;
        CHECK(dense_of(o.word_matrix(w), o.basis(), d) == *dm);
        CHECK(d.symplectic(*dm));
      }
    }
  }

  TEST_CASE("every generator preserves the pairing") {
    auto m = make_builtin_model("sn", 6);
    HomologyOracle o(m, 4);
    for (const auto& c : m->labels_in_window(3)) CHECK(o.preserves_pairing(o.twist_matrix(c)));
    for (const auto& s : {"rho1", "rho2", "R"}) CHECK(o.preserves_pairing(o.symmetry_matrix(s)));
    CHECK(o.preserves_pairing(o.shift_matrix(ShiftLabel{1, 2})));
  }

  TEST_CASE("symmetry matrices: involutions and R^n") {
    for (int n : {5, 6}) {
      auto m = make_builtin_model("sn", n);
      HomologyOracle o(m, 4);
      CHECK((o.symmetry_matrix("rho1") * o.symmetry_matrix("rho1")).is_identity_on_valid());
      CHECK((o.symmetry_matrix("rho2") * o.symmetry_matrix("rho2")).is_identity_on_valid());
      IntMatrix P(o.basis().dim());
      for (int k = 0; k < n; ++k) P = P * o.symmetry_matrix("R");
      CHECK(P.is_identity_on_valid());
    }
    auto m = make_builtin_model("sn", 17);
    HomologyOracle o(m, 12);
    Word rho3 = parse_word("R^4 rho1 R~^4", m);
    IntMatrix S = o.word_matrix(rho3);
    IntMatrix lhs = S * o.twist_matrix(mcgtest::lab(Family::A, 1, 1)) * S;
    CHECK(lhs.agrees_with(o.twist_matrix(mcgtest::lab(Family::Aprime, 1, 9))));
  }

  TEST_CASE("shift matrices") {
    auto m = make_builtin_model("sn", 4);
    HomologyOracle o(m, 5);
    IntMatrix H = o.shift_matrix(ShiftLabel{1, 2});
    auto a22 = *o.basis().class_of(mcgtest::lab(Family::A, 2, 2));
    auto a32 = *o.basis().class_of(mcgtest::lab(Family::A, 3, 2));
    CHECK(*H.apply(a22) == a32);
    CHECK_FALSE(H.invalid().empty());
    IntMatrix HH = H * o.shift_matrix(ShiftLabel{1, 2}, -1);
    CHECK(HH.is_identity_on_valid());
    CHECK(HH.valid_count() > 0);
  }

  TEST_CASE("verify_identity examples") {
    auto m = make_builtin_model("sn", 17);
    HomologyOracle o(m, 12);
    auto r = o.verify_identity(parse_word("A[1,1]", m), Word(m));
    CHECK(r.kind == HomologyCheck::Kind::Refuted);
    CHECK(r.detail.find("b(1,1)") != std::string::npos);

    CHECK(o.word_matrix(Word(m)).is_identity_on_valid());
    CHECK(o.word_matrix(Word(m)).invalid().empty());

    Word f3 = parse_word("A[1,1] C[0,1] C[0,3] B~[1,6] B~[1,8] A'~[1,9] h[13,14]", m);
    Word f5 = parse_word("A[1,1] C[0,1] C[0,3] C~[0,5] B~[1,8] A'~[1,9] h[13,14]", m);
    CHECK(o.verify_identity(invert(f3) * f5, parse_word("B[1,6] C~[0,5]", m)).kind == HomologyCheck::Kind::Consistent);
    CHECK(o.verify_identity(invert(f3) * f5, parse_word("B[1,7] C~[0,5]", m)).kind == HomologyCheck::Kind::Refuted);

    auto small = verify_identity_homology(parse_word("h[1,2]", m), parse_word("h[1,2]", m), 2);
    CHECK(small.kind == HomologyCheck::Kind::Inconclusive);
  }

  TEST_CASE("Jacob ladder: tau3 identity is consistent at window 20") {
    auto m = make_builtin_model("jacob");
    Word lhs = parse_word("H^6 tau2 H~^6 A[1] A'[6] C[1] B[3] H^6 tau2 H~^6", m);
    auto ok = verify_identity_homology(lhs, parse_word("A[13] A'[8] C[12] B[11]", m), 20);
    CHECK(ok.kind == HomologyCheck::Kind::Consistent);
    auto printed = verify_identity_homology(lhs, parse_word("B~[11] C~[12] A'~[8] A~[13]", m), 20);
    CHECK(printed.kind == HomologyCheck::Kind::Refuted);
  }

  TEST_CASE("word_matrix is a homomorphism and ignores symmetry pushing") {
    for (auto [kind, n] : {std::pair{"sn", 7}, std::pair{"jacob", 0}, std::pair{"lochness", 0}}) {
      auto m = n ? make_builtin_model(kind, n) : make_builtin_model(kind);
      HomologyOracle o(m, 12);
      mcgtest::WordGen gen(m, 97);
      gen.max_genus = 3;
      for (int k = 0; k < 80; ++k) {
        Word a = gen.random_word(gen.uniform(0, 6));
        Word b = gen.random_word(gen.uniform(0, 6));
        IntMatrix ab = o.word_matrix(a * b);
        CHECK(ab.agrees_with(o.word_matrix(a) * o.word_matrix(b)));
        CHECK(o.preserves_pairing(ab));
        CHECK(o.word_matrix(push_symmetries(a)).agrees_with(o.word_matrix(a)));
      }
    }
  }

  TEST_CASE("braid and commutation on a small sweep") {
    auto m = make_builtin_model("sn", 4);
    HomologyOracle o(m, 4);
    auto rep = relation_sweep(o, 3);
    CHECK(rep.failures.empty());
    CHECK(rep.braiding > 0);
    CHECK(rep.commuting > 0);
    CHECK(rep.pairs == rep.labels * (rep.labels - 1) / 2);
  }
}
