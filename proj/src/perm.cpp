#include "mcg/perm.hpp"

#include <algorithm>
#include <numeric>

#include "mcg/lexer.hpp"

namespace mcg {

Permutation::Permutation(int n) : img_(n) { std::iota(img_.begin(), img_.end(), 0); }

Permutation::Permutation(std::vector<int> images) : img_(std::move(images)) {
  std::vector<char> seen(img_.size(), 0);
  for (int v : img_) {
    if (v < 0 || v >= degree() || seen[v]) throw Error(ErrorCode::EvaluationError, "image list is not a permutation");
    seen[v] = 1;
  }
}

Permutation Permutation::operator*(const Permutation& q) const {
  if (degree() != q.degree()) throw Error(ErrorCode::EvaluationError, "permutation degrees differ");
  std::vector<int> out(img_.size());
  for (int i = 0; i < degree(); ++i) out[i] = img_[q.img_[i]];
  Permutation p;
  p.img_ = std::move(out);
  return p;
}

Permutation Permutation::inverse() const {
  std::vector<int> out(img_.size());
  for (int i = 0; i < degree(); ++i) out[img_[i]] = i;
  Permutation p;
  p.img_ = std::move(out);
  return p;
}

Permutation Permutation::pow(long long k) const {
  Permutation base = k < 0 ? inverse() : *this;
  Permutation out(degree());
  for (long long e = k < 0 ? -k : k; e > 0; e >>= 1) {
    if (e & 1) out = out * base;
    base = base * base;
  }
  return out;
}

bool Permutation::is_identity() const {
  for (int i = 0; i < degree(); ++i)
    if (img_[i] != i) return false;
  return true;
}

std::vector<std::vector<int>> Permutation::cycles() const {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(img_.size(), 0);
  for (int i = 0; i < degree(); ++i) {
    if (seen[i] || img_[i] == i) continue;
    std::vector<int> cyc;
    for (int j = i; !seen[j]; j = img_[j]) {
      seen[j] = 1;
      cyc.push_back(j);
    }
    out.push_back(std::move(cyc));
  }
  return out;
}

BigInt Permutation::order() const {
  BigInt out = 1;
  for (const auto& c : cycles()) {
    BigInt len = c.size();
    out = out / boost::multiprecision::gcd(out, len) * len;
  }
  return out;
}

std::string to_string(const Permutation& p) {
  auto cs = p.cycles();
  if (cs.empty()) return "()";
  std::string s;
  for (const auto& c : cs) {
    s += "(";
    for (std::size_t k = 0; k < c.size(); ++k) s += (k ? " " : "") + std::to_string(c[k] + 1);
    s += ")";
  }
  return s;
}

Permutation parse_cycles(std::string_view text, int n) {
  TokenStream ts(tokenize_line(text, 1), 1, ErrorCode::ParseError);
  Permutation out(n);
  if (ts.at_end()) ts.fail("expected cycle notation");
  while (!ts.at_end()) {
    ts.expect("(");
    std::vector<int> cyc;
    std::vector<SourcePos> where;
    while (!ts.accept(")")) {
      where.push_back(ts.peek().pos);
      long long v = ts.expect_int();
      if (v < 1 || v > n) throw Error(ErrorCode::ParseError, "point " + std::to_string(v) + " outside 1.." + std::to_string(n), where.back());
      if (std::find(cyc.begin(), cyc.end(), v - 1) != cyc.end())
        throw Error(ErrorCode::ParseError, "point " + std::to_string(v) + " repeated in a cycle", where.back());
      cyc.push_back(static_cast<int>(v - 1));
    }
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 0);
    for (std::size_t k = 0; k < cyc.size(); ++k) img[cyc[k]] = cyc[(k + 1) % cyc.size()];
    // Cycles are written left to right and compose as functions.
    out = out * Permutation(std::move(img));
  }
  return out;
}

Permutation rotation(int n) {
  std::vector<int> img(n);
  for (int i = 0; i < n; ++i) img[i] = (i + 1) % n;
  return Permutation(std::move(img));
}

Permutation project(const Word& w) {
  if (!w.model() || !w.model()->has_ends() || !w.model()->n()) {
    throw Error(ErrorCode::WrongModel, "projection to Sym_n needs an S(n) model");
  }
  const auto& m = *w.model();
  const int n = *m.n();
  Permutation out(n);
  for (const auto& g : w.letters()) {
    if (g.kind != GenKind::Symmetry) continue;
    auto perm = m.end_permutation(g.symmetry);
    if (!perm) throw Error(ErrorCode::UndefinedSymmetry, "symmetry '" + g.symmetry + "' has no action on ends");
    out = out * Permutation(*perm).pow(g.exponent);
  }
  return out;
}

// ---------------------------------------------------------------- Schreier-Sims

StabilizerChain::StabilizerChain(int n, const std::vector<Permutation>& gens) : n_(n) {
  std::vector<Permutation> strong;
  for (const auto& g : gens) {
    if (g.degree() != n) throw Error(ErrorCode::EvaluationError, "generator degree differs from n");
    if (!g.is_identity()) strong.push_back(g);
  }
  auto add_base_point_for = [&](const Permutation& g) {
    for (int p = 0; p < n; ++p) {
      if (g(p) != p) {
        base_.push_back(p);
        levels_.emplace_back();
        return;
      }
    }
  };
  for (const auto& g : strong) {
    bool fixes_base = std::all_of(base_.begin(), base_.end(), [&](int b) { return g(b) == b; });
    if (fixes_base) add_base_point_for(g);
  }
  auto fixes_prefix = [&](const Permutation& g, std::size_t upto) {
    for (std::size_t t = 0; t < upto; ++t)
      if (g(base_[t]) != base_[t]) return false;
    return true;
  };
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    for (const auto& g : strong)
      if (fixes_prefix(g, i)) levels_[i].gens.push_back(g);
    rebuild_orbit(i);
  }

  std::size_t i = levels_.size();
  while (i >= 1) {
    const std::size_t lvl = i - 1;
    bool extended = false;
    for (std::size_t oi = 0; oi < levels_[lvl].orbit.size() && !extended; ++oi) {
      const int b = levels_[lvl].orbit[oi];
      for (std::size_t si = 0; si < levels_[lvl].gens.size() && !extended; ++si) {
        const Permutation& s = levels_[lvl].gens[si];
        const Permutation& ub = *levels_[lvl].transversal[b];
        const Permutation& usb = *levels_[lvl].transversal[s(b)];
        Permutation y = usb.inverse() * s * ub;
        auto [h, j] = strip(y, lvl + 1);
        if (j < levels_.size() || !h.is_identity()) {
          if (j == levels_.size()) add_base_point_for(h);
          for (std::size_t l = lvl + 1; l <= j; ++l) {
            levels_[l].gens.push_back(h);
            rebuild_orbit(l);
          }
          i = j + 1;
          extended = true;
        }
      }
    }
    if (!extended) --i;
  }
}

void StabilizerChain::rebuild_orbit(std::size_t i) {
  Level& L = levels_[i];
  L.transversal.assign(n_, std::nullopt);
  L.orbit.assign(1, base_[i]);
  L.transversal[base_[i]] = Permutation(n_);
  for (std::size_t k = 0; k < L.orbit.size(); ++k) {
    int a = L.orbit[k];
    for (const auto& s : L.gens) {
      int b = s(a);
      if (L.transversal[b]) continue;
      L.transversal[b] = s * *L.transversal[a];
      L.orbit.push_back(b);
    }
  }
}

std::pair<Permutation, std::size_t> StabilizerChain::strip(Permutation g, std::size_t from) const {
  for (std::size_t l = from; l < levels_.size(); ++l) {
    int beta = g(base_[l]);
    if (!levels_[l].transversal[beta]) return {g, l};
    g = levels_[l].transversal[beta]->inverse() * g;
  }
  return {g, levels_.size()};
}

BigInt StabilizerChain::order() const {
  BigInt out = 1;
  for (const auto& L : levels_) out *= L.orbit.size();
  return out;
}

bool StabilizerChain::contains(const Permutation& g) const {
  if (g.degree() != n_) return false;
  auto [h, j] = strip(g, 0);
  return j == levels_.size() && h.is_identity();
}

std::vector<std::size_t> StabilizerChain::orbit_sizes() const {
  std::vector<std::size_t> out;
  for (const auto& L : levels_) out.push_back(L.orbit.size());
  return out;
}

BigInt group_order(const std::vector<Permutation>& gens) {
  if (gens.empty()) return 1;
  return StabilizerChain(gens.front().degree(), gens).order();
}

BigInt factorial(int n) {
  BigInt out = 1;
  for (int k = 2; k <= n; ++k) out *= k;
  return out;
}

SymmetricCertificate certify_full_symmetric(const std::vector<Permutation>& gens, int n) {
  SymmetricCertificate c;
  c.order = gens.empty() ? BigInt(1) : StabilizerChain(n, gens).order();
  c.full = c.order == factorial(n);
  return c;
}

}  // namespace mcg
