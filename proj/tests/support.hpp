#pragma once

// Independent oracles and random generators used by the unit tests and the
// acceptance binary. Nothing here calls the engine's rewriting code.

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mcg/engine.hpp"
#include "mcg/model.hpp"
#include "mcg/perm.hpp"
#include "mcg/word.hpp"

namespace mcgtest {

using namespace mcg;

inline std::string source_path(const std::string& rel) { return std::string(MCG_SOURCE_DIR) + "/" + rel; }

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline CurveLabel lab(Family f, int genus, std::optional<int> end = std::nullopt) {
  CurveLabel c;
  c.family = f;
  c.genus = genus;
  c.end = end;
  return c;
}

inline Generator tw(Family f, int genus, std::optional<int> end = std::nullopt, int e = 1) {
  return Generator::twist(lab(f, genus, end), e);
}

// ---------------------------------------------------------------- SL(2,Z)

// Twists about a once-meeting pair act on <a, b> by these matrices.
using M2 = std::array<long long, 4>;
inline M2 mul(const M2& x, const M2& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}
inline M2 sl2_of(const std::vector<int>& letters) {  // +-1 = T_a^{+-1}, +-2 = T_b^{+-1}
  const M2 ta{1, 1, 0, 1}, tai{1, -1, 0, 1}, tb{1, 0, -1, 1}, tbi{1, 0, 1, 1};
  M2 out{1, 0, 0, 1};
  for (int l : letters) out = mul(out, l == 1 ? ta : l == -1 ? tai : l == 2 ? tb : tbi);
  return out;
}

// ---------------------------------------------------------------- dense homology

// Dense symplectic oracle on the handles of a window: twist matrices are
// built from the model's class data with a hand-written pairing.
class DenseHomology {
 public:
  DenseHomology(const SurfaceModel& m, int window) : m_(m) {
    for (const auto& h : m.handles(window)) {
      index_[h] = static_cast<int>(handles_.size());
      handles_.push_back(h);
    }
    dim_ = 2 * static_cast<int>(handles_.size());
  }
  int dim() const { return dim_; }

  using Mat = std::vector<std::vector<long long>>;

  Mat identity() const {
    Mat I(dim_, std::vector<long long>(dim_, 0));
    for (int i = 0; i < dim_; ++i) I[i][i] = 1;
    return I;
  }

  std::optional<std::vector<long long>> cls(const CurveLabel& c) const {
    std::vector<long long> v(dim_, 0);
    for (const auto& comp : m_.homology_class(c)) {
      auto it = index_.find(comp.handle);
      if (it == index_.end()) return std::nullopt;
      v[2 * it->second + (comp.beta ? 1 : 0)] += comp.coeff;
    }
    return v;
  }

  long long omega(const std::vector<long long>& x, const std::vector<long long>& y) const {
    long long s = 0;
    for (int k = 0; k < dim_; k += 2) s += x[k] * y[k + 1] - x[k + 1] * y[k];
    return s;
  }

  // x -> x + e <c, x> c, as columns.
  Mat twist(const CurveLabel& c, int e) const {
    auto v = *cls(c);
    Mat M = identity();
    for (int j = 0; j < dim_; ++j) {
      std::vector<long long> x(dim_, 0);
      x[j] = 1;
      long long p = omega(v, x) * e;
      for (int i = 0; i < dim_; ++i) M[i][j] += p * v[i];
    }
    return M;
  }

  static Mat mul(const Mat& A, const Mat& B) {
    const std::size_t n = A.size();
    Mat C(n, std::vector<long long>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        if (A[i][k])
          for (std::size_t j = 0; j < n; ++j) C[i][j] += A[i][k] * B[k][j];
    return C;
  }

  // Twist-only words.
  std::optional<Mat> word(const Word& w) const {
    Mat M = identity();
    for (const auto& g : w.letters()) {
      if (g.kind != GenKind::Twist || !cls(g.curve)) return std::nullopt;
      M = mul(M, twist(g.curve, g.exponent));
    }
    return M;
  }

  bool symplectic(const Mat& M) const {
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) {
        std::vector<long long> ci(dim_), cj(dim_), ei(dim_, 0), ej(dim_, 0);
        for (int r = 0; r < dim_; ++r) ci[r] = M[r][i], cj[r] = M[r][j];
        ei[i] = 1, ej[j] = 1;
        if (omega(ci, cj) != omega(ei, ej)) return false;
      }
    return true;
  }

 private:
  const SurfaceModel& m_;
  std::vector<HandleCoord> handles_;
  std::map<HandleCoord, int> index_;
  int dim_ = 0;
};

// ---------------------------------------------------------------- permutations

// Order of a permutation group by closing the generator set under products.
inline std::size_t closure_order(const std::vector<std::vector<int>>& gens, int n) {
  std::vector<int> id(n);
  for (int i = 0; i < n; ++i) id[i] = i;
  std::set<std::vector<int>> seen{id};
  std::vector<std::vector<int>> frontier{id};
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& p : frontier)
      for (const auto& g : gens) {
        std::vector<int> q(n);
        for (int i = 0; i < n; ++i) q[i] = g[p[i]];
        if (seen.insert(q).second) next.push_back(q);
      }
    frontier = std::move(next);
  }
  return seen.size();
}

// ---------------------------------------------------------------- free reduction

// Cancels a random adjacent inverse pair until none remain. Exponents are
// unit-expanded first so that the result is comparable across strategies.
inline std::vector<Generator> unit_letters(const Word& w) {
  std::vector<Generator> out;
  for (const auto& g : w.letters()) {
    Generator u = g;
    u.exponent = g.exponent > 0 ? 1 : -1;
    for (int k = 0; k < std::abs(g.exponent); ++k) out.push_back(u);
  }
  return out;
}

inline std::vector<Generator> random_order_reduce(std::vector<Generator> L, std::mt19937& rng) {
  for (;;) {
    std::vector<std::size_t> spots;
    for (std::size_t i = 0; i + 1 < L.size(); ++i)
      if (L[i].same_base(L[i + 1]) && L[i].exponent == -L[i + 1].exponent) spots.push_back(i);
    if (spots.empty()) return L;
    std::size_t i = spots[std::uniform_int_distribution<std::size_t>(0, spots.size() - 1)(rng)];
    L.erase(L.begin() + static_cast<std::ptrdiff_t>(i), L.begin() + static_cast<std::ptrdiff_t>(i) + 2);
  }
}

// ---------------------------------------------------------------- random words

struct WordGen {
  ModelPtr model;
  std::mt19937 rng;
  int max_genus = 4;
  bool symmetries = true;
  bool shifts = true;

  WordGen(ModelPtr m, unsigned seed) : model(std::move(m)), rng(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

  CurveLabel random_label() {
    const auto& m = *model;
    for (;;) {
      CurveLabel c;
      c.family = static_cast<Family>(uniform(0, 3));
      if (m.has_ends()) {
        c.genus = uniform(c.family == Family::C ? 0 : 1, max_genus);
        c.end = uniform(1, *m.n());
      } else {
        c.genus = uniform(-max_genus, max_genus);
      }
      if (m.valid_label(c)) return c;
    }
  }

  Generator random_letter() {
    const auto& m = *model;
    int roll = uniform(0, 9);
    if (symmetries && roll == 0) {
      auto prims = m.primitive_symmetries();
      std::vector<std::string> acting;
      for (const auto& s : prims)
        if (m.has_label_action(s)) acting.push_back(s);
      if (!acting.empty()) return Generator::sym(acting[uniform(0, static_cast<int>(acting.size()) - 1)], 1);
    }
    if (shifts && roll == 1 && m.has_shifts()) {
      int p = uniform(1, *m.n());
      int q = p % *m.n() + 1;
      return Generator::handle_shift(ShiftLabel{p, q}, uniform(0, 1) ? 1 : -1);
    }
    return Generator::twist(random_label(), uniform(0, 1) ? 1 : -1);
  }

  Word random_word(int len) {
    std::vector<Generator> L;
    for (int k = 0; k < len; ++k) L.push_back(random_letter());
    return free_reduce(Word(model, L));
  }

  // A word equal to w in the group: inserted cancelling pairs, swaps of
  // disjoint twists and braid substitutions aba -> bab.
  Word equal_variant(const Word& w) {
    std::vector<Generator> L = unit_letters(w);
    const auto& m = *model;
    int steps = uniform(1, 6);
    for (int s = 0; s < steps; ++s) {
      int kind = uniform(0, 2);
      if (kind == 0 || L.size() < 2) {
        Generator x = random_letter();
        std::size_t at = static_cast<std::size_t>(uniform(0, static_cast<int>(L.size())));
        L.insert(L.begin() + static_cast<std::ptrdiff_t>(at), {x, x.inverse()});
      } else if (kind == 1) {
        std::size_t i = static_cast<std::size_t>(uniform(0, static_cast<int>(L.size()) - 2));
        const auto& x = L[i];
        const auto& y = L[i + 1];
        if (x.kind == GenKind::Twist && y.kind == GenKind::Twist && m.intersection_number(x.curve, y.curve) == 0)
          std::swap(L[i], L[i + 1]);
      } else {
        // Insert a b a (b a b)^-1 for a once-meeting pair.
        CurveLabel a = random_label();
        auto partners = m.meet_partners(a);
        if (partners.empty()) continue;
        CurveLabel b = partners[uniform(0, static_cast<int>(partners.size()) - 1)];
        if (!m.valid_label(b)) continue;
        Generator A = Generator::twist(a), B = Generator::twist(b);
        std::size_t at = static_cast<std::size_t>(uniform(0, static_cast<int>(L.size())));
        L.insert(L.begin() + static_cast<std::ptrdiff_t>(at), {A, B, A, B.inverse(), A.inverse(), B.inverse()});
      }
    }
    return Word(model, L);
  }
};

}  // namespace mcgtest
