#include "mcg/engine.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <deque>
#include <limits>
#include <map>
#include <set>
#include <unordered_set>

#include "mcg/homology.hpp"
#include "mcg/perm.hpp"

namespace mcg {

long long default_budget() {
  if (const char* env = std::getenv("MCG_BUDGET")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end && *end == '\0' && v >= 0) return v;
  }
  return kDefaultBudget;
}

std::string_view to_string(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::ProvedEqual: return "ProvedEqual";
    case Verdict::Kind::ProvedDistinct: return "ProvedDistinct";
    case Verdict::Kind::Unknown: return "Unknown";
  }
  return "?";
}

namespace {

int positive_power(const SurfaceModel& m, const std::string& s, int e) {
  auto order = m.declared_order(s);
  if (order) return static_cast<int>(((e % *order) + *order) % *order);
  return e;  // negative means no usable power
}

std::optional<CurveLabel> symmetry_on_label(const SurfaceModel& m, const std::string& s, int e, CurveLabel c) {
  int p = positive_power(m, s, e);
  if (p < 0) return std::nullopt;
  for (int t = 0; t < p; ++t) {
    auto next = m.try_apply_symmetry(s, c);
    if (!next) return std::nullopt;
    c = *next;
  }
  return c;
}

// Conjugate s^e h^f s^-e as a signed canonical shift.
std::optional<std::pair<ShiftLabel, int>> symmetry_on_shift(const SurfaceModel& m, const std::string& s, int e,
                                                            ShiftLabel h) {
  if (!m.end_permutation(s)) return std::nullopt;
  int p = positive_power(m, s, e);
  if (p < 0) return std::nullopt;
  int sign = 1;
  for (int t = 0; t < p; ++t) {
    auto [h2, sg] = m.apply_symmetry_shift(s, h);
    h = h2;
    sign *= sg;
  }
  return std::pair(h, sign);
}

std::optional<CurveLabel> shift_on_label(const SurfaceModel& m, const ShiftLabel& h, int e, CurveLabel c) {
  for (int t = 0; t < std::abs(e); ++t) {
    auto a = m.apply_shift(h, e < 0 ? -1 : 1, c);
    if (a.kind == ShiftAction::Kind::Undefined) return std::nullopt;
    if (a.kind == ShiftAction::Kind::Moved) c = a.image;
  }
  return c;
}

// Image of a single letter acting on a curve (a twist acts only when the
// curve is disjoint from or equal to its own).
std::optional<CurveLabel> letter_on_label(const SurfaceModel& m, const Generator& g, const CurveLabel& c) {
  switch (g.kind) {
    case GenKind::Twist:
      if (g.curve == c || m.intersection_number(g.curve, c) == 0) return c;
      return std::nullopt;
    case GenKind::Shift: return shift_on_label(m, g.shift, g.exponent, c);
    case GenKind::Symmetry: return symmetry_on_label(m, g.symmetry, g.exponent, c);
  }
  return std::nullopt;
}

// Image of a twist or shift letter under conjugation by a block of symmetry
// letters (applied right to left).
std::optional<Generator> symmetries_on_letter(const SurfaceModel& m, const std::vector<Generator>& sigma,
                                              Generator g) {
  for (auto it = sigma.rbegin(); it != sigma.rend(); ++it) {
    if (g.kind == GenKind::Twist) {
      auto c = symmetry_on_label(m, it->symmetry, it->exponent, g.curve);
      if (!c) return std::nullopt;
      g.curve = *c;
    } else if (g.kind == GenKind::Shift) {
      auto img = symmetry_on_shift(m, it->symmetry, it->exponent, g.shift);
      if (!img) return std::nullopt;
      g.shift = img->first;
      g.exponent *= img->second;
    } else {
      return std::nullopt;
    }
  }
  return g;
}

// Shared state of one normalization run.
struct Context {
  Context(const SurfaceModel& m, long long budget) : model(m), limit(budget) {}

  const SurfaceModel& model;
  long long limit;
  long long used = 0;
  std::vector<std::string>* trace = nullptr;
  std::map<std::pair<CurveLabel, CurveLabel>, bool> disjoint_cache;

  bool exhausted() const { return used > limit; }
  void spend(long long k = 1) { used += k; }
  void note(const std::string& s) {
    if (trace && trace->size() < 200) trace->push_back(s);
  }

  bool disjoint(const CurveLabel& a, const CurveLabel& b) {
    if (a == b) return true;
    auto key = a < b ? std::pair(a, b) : std::pair(b, a);
    auto it = disjoint_cache.find(key);
    if (it != disjoint_cache.end()) return it->second;
    bool d = model.intersection_number(a, b) == 0;
    disjoint_cache.emplace(key, d);
    return d;
  }

  bool commute(const Generator& x, const Generator& y) {
    if (x.same_base(y)) return true;
    if (x.kind == GenKind::Symmetry || y.kind == GenKind::Symmetry) return false;
    if (x.kind == GenKind::Twist && y.kind == GenKind::Twist) return disjoint(x.curve, y.curve);
    if (x.kind == GenKind::Shift && y.kind == GenKind::Shift) return model.shifts_disjoint(x.shift, y.shift);
    const Generator& s = x.kind == GenKind::Shift ? x : y;
    const Generator& t = x.kind == GenKind::Shift ? y : x;
    return model.apply_shift(s.shift, 1, t.curve).kind == ShiftAction::Kind::Fixed;
  }
};

using Letters = std::vector<Generator>;

bool free_reduce_pass(Letters& L, Context& ctx) {
  Letters out;
  bool changed = false;
  for (const auto& g : L) {
    if (!out.empty() && out.back().same_base(g)) {
      out.back().exponent += g.exponent;
      ctx.spend();
      changed = true;
      if (out.back().exponent == 0) out.pop_back();
    } else {
      out.push_back(g);
    }
  }
  L = std::move(out);
  return changed;
}

bool push_symmetries_pass(Letters& L, Context& ctx) {
  const auto& m = ctx.model;
  Letters out, sigma;
  bool changed = false;
  auto flush = [&] {
    auto reduced = reduce_symmetry_letters(m, sigma);
    if (reduced != sigma) changed = true;
    out.insert(out.end(), reduced.begin(), reduced.end());
    sigma.clear();
  };
  for (const auto& g : L) {
    if (g.kind == GenKind::Symmetry) {
      sigma.push_back(g);
      continue;
    }
    if (sigma.empty()) {
      out.push_back(g);
      continue;
    }
    auto reduced = reduce_symmetry_letters(m, sigma);
    if (reduced.empty()) {
      changed = changed || reduced != sigma;
      sigma.clear();
      out.push_back(g);
      continue;
    }
    sigma = std::move(reduced);
    if (auto img = symmetries_on_letter(m, sigma, g)) {
      out.push_back(*img);
      ctx.spend();
      changed = true;
    } else {
      flush();
      out.push_back(g);
    }
  }
  flush();
  if (out != L) changed = true;
  L = std::move(out);
  return changed;
}

bool push_shifts_pass(Letters& L, Context& ctx) {
  const auto& m = ctx.model;
  bool changed = false;
  for (std::size_t i = L.size(); i-- > 0;) {
    if (i >= L.size() || L[i].kind != GenKind::Shift) continue;
    std::size_t pos = i;
    while (pos + 1 < L.size()) {
      Generator& nx = L[pos + 1];
      if (nx.kind == GenKind::Twist) {
        auto img = shift_on_label(m, L[pos].shift, L[pos].exponent, nx.curve);
        if (!img) break;
        nx.curve = *img;
        std::swap(L[pos], L[pos + 1]);
        ++pos;
        ctx.spend();
        changed = true;
      } else if (nx.kind == GenKind::Shift) {
        if (nx.same_base(L[pos])) {
          L[pos].exponent += nx.exponent;
          L.erase(L.begin() + pos + 1);
          if (L[pos].exponent == 0) L.erase(L.begin() + pos);
          ctx.spend();
          changed = true;
          break;
        }
        if (m.shifts_disjoint(L[pos].shift, nx.shift) && base_order(L[pos], nx) > 0) {
          std::swap(L[pos], L[pos + 1]);
          ++pos;
          changed = true;
          continue;
        }
        break;
      } else {
        break;
      }
    }
  }
  return changed;
}

bool merge_pass(Letters& L, Context& ctx) {
  bool changed = false;
  for (std::size_t i = 0; i < L.size(); ++i) {
    for (std::size_t j = i + 1; j < L.size(); ++j) {
      if (L[j].same_base(L[i])) {
        L[i].exponent += L[j].exponent;
        L.erase(L.begin() + j);
        ctx.spend();
        changed = true;
        if (L[i].exponent == 0) {
          L.erase(L.begin() + i);
          i = static_cast<std::size_t>(-1);  // restart
          break;
        }
        --j;
        continue;
      }
      if (!ctx.commute(L[i], L[j])) break;
    }
    if (ctx.exhausted()) break;
  }
  return changed;
}

// Lexicographically least representative of the commutation class.
bool sort_pass(Letters& L, Context& ctx) {
  Letters out;
  out.reserve(L.size());
  std::vector<char> used(L.size(), 0);
  for (std::size_t step = 0; step < L.size(); ++step) {
    std::size_t best = L.size();
    for (std::size_t k = 0; k < L.size(); ++k) {
      if (used[k]) continue;
      bool free = true;
      for (std::size_t t = 0; t < k && free; ++t)
        if (!used[t] && !ctx.commute(L[t], L[k])) free = false;
      if (!free) continue;
      if (best == L.size() || letter_order(L[k], L[best]) < 0) best = k;
    }
    used[best] = 1;
    out.push_back(L[best]);
  }
  bool changed = out != L;
  L = std::move(out);
  return changed;
}

// u t_c^e u~ -> t_{u(c)}^e when u(c) is a standard curve.
bool collapse_pass(Letters& L, Context& ctx) {
  for (std::size_t k = 1; k + 1 < L.size(); ++k) {
    if (L[k].kind != GenKind::Twist) continue;
    std::size_t reach = 0;
    while (reach < k && k + reach + 1 < L.size() && L[k - reach - 1] == L[k + reach + 1].inverse()) ++reach;
    for (std::size_t r = reach; r >= 1; --r) {
      CurveLabel c = L[k].curve;
      bool ok = true;
      for (std::size_t t = 1; t <= r && ok; ++t) {
        auto img = letter_on_label(ctx.model, L[k - t], c);
        if (!img) ok = false;
        else c = *img;
      }
      if (!ok) continue;
      Generator g = Generator::twist(c, L[k].exponent);
      ctx.note("collapse conjugate of " + to_string(L[k]) + " to " + to_string(g));
      L.erase(L.begin() + (k - r), L.begin() + (k + r + 1));
      L.insert(L.begin() + (k - r), g);
      ctx.spend();
      return true;
    }
  }
  return false;
}

Letters cheap_letters(Letters L, Context& ctx, bool* complete) {
  *complete = true;
  for (int round = 0; round < 1000; ++round) {
    bool changed = false;
    changed |= free_reduce_pass(L, ctx);
    if (ctx.exhausted()) break;
    changed |= push_symmetries_pass(L, ctx);
    if (ctx.exhausted()) break;
    changed |= push_shifts_pass(L, ctx);
    if (ctx.exhausted()) break;
    changed |= merge_pass(L, ctx);
    if (ctx.exhausted()) break;
    changed |= sort_pass(L, ctx);
    changed |= collapse_pass(L, ctx);
    if (ctx.exhausted()) break;
    if (!changed) return L;
  }
  *complete = false;
  return L;
}

// ---------------------------------------------------------------- braid search

// Words of length <= 3 in t_a^{+-1}, t_b^{+-1} grouped by their image in
// SL(2,Z); for i(a,b) = 1 equal images mean equal mapping classes at these
// lengths.
struct BraidTable {
  using Small = std::vector<std::pair<int, int>>;  // (curve 0/1, sign)
  std::map<std::array<long long, 4>, std::vector<Small>> classes;

  static std::array<long long, 4> mul(const std::array<long long, 4>& x, const std::array<long long, 4>& y) {
    return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
            x[2] * y[1] + x[3] * y[3]};
  }
  static std::array<long long, 4> gen(int curve, int sign) {
    if (curve == 0) return {1, sign, 0, 1};
    return {1, 0, -sign, 1};
  }
  static std::array<long long, 4> image(const Small& w) {
    std::array<long long, 4> m{1, 0, 0, 1};
    for (auto [c, s] : w) m = mul(m, gen(c, s));
    return m;
  }

  BraidTable() {
    std::vector<Small> all{{}};
    std::vector<Small> layer{{}};
    for (int len = 1; len <= 3; ++len) {
      std::vector<Small> next;
      for (const auto& w : layer) {
        for (int c = 0; c < 2; ++c) {
          for (int s : {1, -1}) {
            if (!w.empty() && w.back().first == c && w.back().second == -s) continue;
            Small x = w;
            x.emplace_back(c, s);
            next.push_back(x);
          }
        }
      }
      all.insert(all.end(), next.begin(), next.end());
      layer = std::move(next);
    }
    for (const auto& w : all) classes[image(w)].push_back(w);
  }
};

const BraidTable& braid_table() {
  static const BraidTable table;
  return table;
}

Letters unit_expand(const Letters& L) {
  Letters out;
  for (const auto& g : L) {
    if (g.kind != GenKind::Twist) {
      out.push_back(g);
      continue;
    }
    int s = g.exponent < 0 ? -1 : 1;
    for (int t = 0; t < std::abs(g.exponent); ++t) out.push_back(Generator::twist(g.curve, s));
  }
  return out;
}

// Words obtained by one braid-window rewrite.
std::vector<Letters> braid_neighbors(const Letters& X, Context& ctx) {
  std::vector<Letters> out;
  Letters U = unit_expand(X);
  const auto& table = braid_table();
  auto movable_to = [&](std::size_t from, std::size_t j, const std::vector<std::size_t>& skip) {
    for (std::size_t t = from + 1; t < j; ++t) {
      if (std::find(skip.begin(), skip.end(), t) != skip.end()) continue;
      if (!ctx.commute(U[t], U[j])) return false;
    }
    return true;
  };
  for (std::size_t i = 0; i < U.size(); ++i) {
    if (U[i].kind != GenKind::Twist) continue;
    const CurveLabel a = U[i].curve;
    for (std::size_t j1 = i + 1; j1 < U.size(); ++j1) {
      if (U[j1].kind != GenKind::Twist || U[j1].curve == a) {
        if (!ctx.commute(U[j1], U[i])) break;
        continue;
      }
      const CurveLabel b = U[j1].curve;
      bool adjacent = ctx.model.intersection_number(a, b) == 1;
      if (adjacent && movable_to(i, j1, {})) {
        for (std::size_t j2 = j1 + 1; j2 < U.size(); ++j2) {
          if (U[j2].kind != GenKind::Twist || (U[j2].curve != a && U[j2].curve != b)) continue;
          if (!movable_to(i, j2, {j1})) continue;
          BraidTable::Small window{{0, U[i].exponent}, {1, U[j1].exponent},
                                   {U[j2].curve == a ? 0 : 1, U[j2].exponent}};
          auto it = table.classes.find(BraidTable::image(window));
          if (it != table.classes.end()) {
            for (const auto& rep : it->second) {
              if (rep == window || rep.size() > 3) continue;
              Letters Y;
              Y.insert(Y.end(), U.begin(), U.begin() + i);
              for (auto [c, s] : rep) Y.push_back(Generator::twist(c == 0 ? a : b, s));
              for (std::size_t t = i + 1; t < U.size(); ++t)
                if (t != j1 && t != j2) Y.push_back(U[t]);
              out.push_back(std::move(Y));
            }
          }
          break;
        }
      }
      if (!ctx.commute(U[j1], U[i])) break;
    }
  }
  return out;
}

std::string key_of(const Letters& L) {
  std::string s;
  for (const auto& g : L) s += to_string(g) + " ";
  return s;
}

Letters braid_search(Letters start, Context& ctx) {
  Letters best = start;
  std::deque<Letters> queue{start};
  std::unordered_set<std::string> seen{key_of(start)};
  while (!queue.empty() && !ctx.exhausted() && !best.empty()) {
    Letters X = std::move(queue.front());
    queue.pop_front();
    for (auto& Y : braid_neighbors(X, ctx)) {
      ctx.spend();
      if (ctx.exhausted()) break;
      bool complete;
      Letters Z = cheap_letters(std::move(Y), ctx, &complete);
      if (Z.size() < best.size()) {
        ctx.note("braid search: " + std::to_string(best.size()) + " -> " + std::to_string(Z.size()) + " letters");
        best = Z;
        queue.clear();
        seen.clear();
        seen.insert(key_of(Z));
        queue.push_back(std::move(Z));
        break;
      }
      if (Z.size() <= best.size() && seen.insert(key_of(Z)).second) queue.push_back(std::move(Z));
    }
  }
  return best;
}

}  // namespace

bool letters_commute(const SurfaceModel& m, const Generator& x, const Generator& y) {
  Context ctx(m, 0);
  return ctx.commute(x, y);
}

std::optional<CurveLabel> curve_image(const Word& g, const CurveLabel& c) {
  if (g.empty()) return c;
  const auto& m = *g.model();
  CurveLabel cur = c;
  for (auto it = g.letters().rbegin(); it != g.letters().rend(); ++it) {
    auto img = letter_on_label(m, *it, cur);
    if (!img) return std::nullopt;
    cur = *img;
  }
  return cur;
}

namespace {

// g t_c^f g~ computed from the inside out. State: current = v t_c^f v~,
// with v a twist word kept as outermost-first letters.
std::optional<Letters> conjugate_twist(const SurfaceModel& m, const Letters& g, CurveLabel c, int f) {
  Letters v;  // v[0] is outermost
  for (auto it = g.rbegin(); it != g.rend(); ++it) {
    const Generator& y = *it;
    if (y.kind == GenKind::Symmetry) {
      auto img = symmetry_on_label(m, y.symmetry, y.exponent, c);
      if (!img) return std::nullopt;
      c = *img;
      for (auto& x : v) {
        auto xi = symmetry_on_label(m, y.symmetry, y.exponent, x.curve);
        if (!xi) return std::nullopt;
        x.curve = *xi;
      }
      continue;
    }
    if (y.kind == GenKind::Shift) {
      auto img = shift_on_label(m, y.shift, y.exponent, c);
      if (!img) return std::nullopt;
      Letters nv = v;
      for (auto& x : nv) {
        auto xi = shift_on_label(m, y.shift, y.exponent, x.curve);
        if (!xi) return std::nullopt;
        x.curve = *xi;
      }
      c = *img;
      v = std::move(nv);
      continue;
    }
    auto disjoint = [&](const CurveLabel& a, const CurveLabel& b) {
      return a == b || m.intersection_number(a, b) == 0;
    };
    bool clear_of_all = disjoint(y.curve, c) &&
                        std::all_of(v.begin(), v.end(), [&](const Generator& x) { return disjoint(y.curve, x.curve); });
    if (clear_of_all) continue;
    if (v.size() == 1 && y.curve == c && std::abs(y.exponent) == 1 && y.exponent == v[0].exponent &&
        m.intersection_number(v[0].curve, c) == 1) {
      // c^e x^e t_c x^-e c^-e = t_x for i(x,c) = 1
      c = v[0].curve;
      v.clear();
      continue;
    }
    if (!v.empty() && v[0].curve == y.curve) {
      v[0].exponent += y.exponent;
      if (v[0].exponent == 0) v.erase(v.begin());
      continue;
    }
    v.insert(v.begin(), y);
  }
  Letters out = v;
  out.push_back(Generator::twist(c, f));
  for (auto it = v.rbegin(); it != v.rend(); ++it) out.push_back(it->inverse());
  return out;
}

std::optional<Letters> conjugate_shift(const SurfaceModel& m, const Letters& g, Generator h) {
  for (auto it = g.rbegin(); it != g.rend(); ++it) {
    const Generator& y = *it;
    if (y.kind == GenKind::Symmetry) {
      auto img = symmetry_on_shift(m, y.symmetry, y.exponent, h.shift);
      if (!img) return std::nullopt;
      h.shift = img->first;
      h.exponent *= img->second;
    } else if (y.kind == GenKind::Twist) {
      // y h y~ = h when h fixes y's curve.
      if (m.apply_shift(h.shift, 1, y.curve).kind != ShiftAction::Kind::Fixed) return std::nullopt;
    } else if (!(y.same_base(h) || m.shifts_disjoint(y.shift, h.shift))) {
      return std::nullopt;
    }
  }
  return Letters{h};
}

}  // namespace

Word conjugate(const Word& w, const Word& g) {
  require_same_model(w, g);
  if (g.empty()) return free_reduce(w);
  const auto& m = *g.model();
  const Letters& gl = g.letters();
  Letters out;
  auto literal = [&](const Generator& x) {
    out.insert(out.end(), gl.begin(), gl.end());
    out.push_back(x);
    for (auto it = gl.rbegin(); it != gl.rend(); ++it) out.push_back(it->inverse());
  };
  for (const auto& x : w.letters()) {
    std::optional<Letters> img;
    if (x.kind == GenKind::Twist) img = conjugate_twist(m, gl, x.curve, x.exponent);
    else if (x.kind == GenKind::Shift) img = conjugate_shift(m, gl, x);
    if (img) {
      out.insert(out.end(), img->begin(), img->end());
    } else {
      literal(x);
    }
  }
  return free_reduce(Word(g.model(), std::move(out)));
}

Word push_symmetries(const Word& w) {
  if (w.empty()) return w;
  Context ctx(*w.model(), std::numeric_limits<long long>::max());
  Letters L = w.letters();
  push_symmetries_pass(L, ctx);
  return free_reduce(Word(w.model(), std::move(L)));
}

NormalizeResult normalize_cheap(const Word& w, long long budget) {
  NormalizeResult r;
  if (w.empty()) {
    r.word = w;
    return r;
  }
  Context ctx(*w.model(), budget);
  ctx.trace = &r.trace;
  bool complete;
  Letters L = cheap_letters(w.letters(), ctx, &complete);
  r.word = Word(w.model(), std::move(L));
  r.complete = complete && !ctx.exhausted();
  r.rewrites = std::min(ctx.used, budget);
  return r;
}

NormalizeResult normalize(const Word& w, long long budget) {
  NormalizeResult r;
  if (w.empty()) {
    r.word = w;
    return r;
  }
  Context ctx(*w.model(), budget);
  ctx.trace = &r.trace;
  bool complete;
  Letters L = cheap_letters(w.letters(), ctx, &complete);
  if (!ctx.exhausted() && !L.empty()) L = braid_search(std::move(L), ctx);
  r.word = Word(w.model(), std::move(L));
  r.complete = complete && !ctx.exhausted();
  r.rewrites = std::min(ctx.used, budget);
  return r;
}

namespace {

std::optional<HomologyCheck> homology_check(const Word& w1, const Word& w2, const EquivalenceOptions& opt) {
  if (!w1.model() && !w2.model()) return std::nullopt;
  try {
    const ModelPtr& model = w1.model() ? w1.model() : w2.model();
    if (opt.oracle && opt.oracle->basis().model() == model && opt.oracle->basis().window() == opt.window)
      return opt.oracle->verify_identity(w1, w2);
    HomologyOracle oracle(model, opt.window);
    return oracle.verify_identity(w1, w2);
  } catch (const Error& e) {
    return HomologyCheck{HomologyCheck::Kind::Inconclusive, e.detail(), 0};
  }
}

std::string homology_text(const HomologyCheck& h) {
  return std::string(to_string(h.kind)) + (h.detail.empty() ? "" : ": " + h.detail);
}

}  // namespace

Verdict equivalent(const Word& w1, const Word& w2, const EquivalenceOptions& opt) {
  require_same_model(w1, w2);
  Verdict v;
  Word d = w1 * invert(w2);
  if (d.empty()) {
    v.kind = Verdict::Kind::ProvedEqual;
    v.oracle = "rewrite";
    v.homology = "consistent: identical words";
    return v;
  }
  const ModelPtr model = d.model();
  Context ctx(*model, opt.budget);
  ctx.trace = &v.trace;
  bool complete;
  Letters L = cheap_letters(d.letters(), ctx, &complete);

  auto hom = homology_check(w1, w2, opt);
  if (hom) v.homology = homology_text(*hom);

  auto finish = [&](Verdict::Kind k, std::string oracle, std::string witness) {
    v.kind = k;
    v.oracle = std::move(oracle);
    v.witness = std::move(witness);
    v.budget_used = std::min(ctx.used, opt.budget);
    return v;
  };

  if (L.empty() && !ctx.exhausted()) return finish(Verdict::Kind::ProvedEqual, "rewrite", "");
  if (hom && hom->kind == HomologyCheck::Kind::Refuted)
    return finish(Verdict::Kind::ProvedDistinct, "homology", hom->detail);
  if (model->has_ends()) {
    try {
      Permutation p1 = project(w1), p2 = project(w2);
      if (p1 != p2) return finish(Verdict::Kind::ProvedDistinct, "projection", to_string(p1) + " vs " + to_string(p2));
    } catch (const Error&) {
    }
  }
  if (!ctx.exhausted()) {
    L = braid_search(std::move(L), ctx);
    if (L.empty() && !ctx.exhausted()) return finish(Verdict::Kind::ProvedEqual, "rewrite", "");
  }
  return finish(Verdict::Kind::Unknown, "budget", to_string(Word(model, L)));
}

Verdict check_involution(const Word& rho, const Word& x, const EquivalenceOptions& opt) {
  require_same_model(rho, x);
  Verdict sq = equivalent(rho * rho, Word(rho.model()), opt);
  if (!sq.equal()) {
    throw Error(ErrorCode::NotAnInvolution, to_string(rho) + " does not square to the identity (" +
                                                std::string(to_string(sq.kind)) + ")");
  }
  Verdict v = equivalent(rho * x * rho, invert(x), opt);
  v.budget_used += sq.budget_used;
  return v;
}

}  // namespace mcg
