#include "mcg/word.hpp"

#include <cstdlib>
#include <tuple>

namespace mcg {

Generator Generator::twist(CurveLabel c, int e) {
  Generator g;
  g.kind = GenKind::Twist;
  g.curve = c;
  g.exponent = e;
  return g;
}

Generator Generator::handle_shift(ShiftLabel h, int e) {
  Generator g;
  g.kind = GenKind::Shift;
  if (h.from > h.to) {
    std::swap(h.from, h.to);
    e = -e;
  }
  g.shift = h;
  g.exponent = e;
  return g;
}

Generator Generator::sym(std::string name, int e) {
  Generator g;
  g.kind = GenKind::Symmetry;
  g.symmetry = std::move(name);
  g.exponent = e;
  return g;
}

bool Generator::same_base(const Generator& o) const {
  if (kind != o.kind) return false;
  switch (kind) {
    case GenKind::Twist: return curve == o.curve;
    case GenKind::Shift: return shift == o.shift;
    case GenKind::Symmetry: return symmetry == o.symmetry;
  }
  return false;
}

Generator Generator::inverse() const {
  Generator g = *this;
  g.exponent = -exponent;
  return g;
}

std::strong_ordering base_order(const Generator& x, const Generator& y) {
  if (x.kind != y.kind) return static_cast<int>(x.kind) <=> static_cast<int>(y.kind);
  switch (x.kind) {
    case GenKind::Twist: return x.curve <=> y.curve;
    case GenKind::Shift: return x.shift <=> y.shift;
    case GenKind::Symmetry: return x.symmetry.compare(y.symmetry) <=> 0;
  }
  return std::strong_ordering::equal;
}

std::strong_ordering letter_order(const Generator& x, const Generator& y) {
  if (auto c = base_order(x, y); c != 0) return c;
  return x.exponent <=> y.exponent;
}

namespace {

std::string power_suffix(int e) { return (e == 1 || e == -1) ? "" : "^" + std::to_string(e < 0 ? -e : e); }

}  // namespace

std::string to_string(const Generator& g) {
  const bool inv = g.exponent < 0;
  switch (g.kind) {
    case GenKind::Twist: {
      std::string s(family_name(g.curve.family));
      if (inv) s += "~";
      s += "[" + std::to_string(g.curve.genus);
      if (g.curve.end) s += "," + std::to_string(*g.curve.end);
      return s + "]" + power_suffix(g.exponent);
    }
    case GenKind::Shift:
      return std::string(inv ? "h~" : "h") + "[" + std::to_string(g.shift.from) + "," + std::to_string(g.shift.to) +
             "]" + power_suffix(g.exponent);
    case GenKind::Symmetry:
      return g.symmetry + (inv ? "~" : "") + power_suffix(g.exponent);
  }
  return "?";
}

Word::Word(ModelPtr model, std::vector<Generator> letters) : model_(std::move(model)), letters_(std::move(letters)) {}

void require_same_model(const Word& a, const Word& b) {
  if (a.model() && b.model() && a.model() != b.model()) {
    throw Error(ErrorCode::ModelMismatch,
                "words belong to different models (" + a.model()->description() + " vs " + b.model()->description() + ")");
  }
}

Word Word::operator*(const Word& rhs) const {
  Word out = *this;
  out *= rhs;
  return out;
}

Word& Word::operator*=(const Word& rhs) {
  require_same_model(*this, rhs);
  if (!model_) model_ = rhs.model_;
  letters_.insert(letters_.end(), rhs.letters_.begin(), rhs.letters_.end());
  return *this;
}

Word invert(const Word& w) {
  std::vector<Generator> out;
  out.reserve(w.size());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) out.push_back(it->inverse());
  return Word(w.model(), std::move(out));
}

Word free_reduce(const Word& w) {
  std::vector<Generator> out;
  for (const auto& g : w.letters()) {
    if (g.exponent == 0) continue;
    if (!out.empty() && out.back().same_base(g)) {
      out.back().exponent += g.exponent;
      if (out.back().exponent == 0) out.pop_back();
    } else {
      out.push_back(g);
    }
  }
  return Word(w.model(), std::move(out));
}

Word power(const Word& w, long long k) {
  Word base = k < 0 ? invert(w) : w;
  Word out(w.model());
  for (long long i = 0; i < (k < 0 ? -k : k); ++i) out *= base;
  return out;
}

std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (const auto& g : w.letters()) {
    if (!s.empty()) s += ' ';
    s += to_string(g);
  }
  return s;
}

namespace {

bool in_pair(const SurfaceModel& m, const Generator& g) {
  return g.kind == GenKind::Symmetry && m.dihedral() &&
         (g.symmetry == m.dihedral()->first || g.symmetry == m.dihedral()->second);
}

// Exponent reduced by the declared order into (-o/2, o/2]; 0 means trivial.
int reduce_exponent(const SurfaceModel& m, const std::string& name, int e) {
  auto order = m.declared_order(name);
  if (!order || *order <= 0) return e;
  long long o = *order;
  long long r = ((e % o) + o) % o;
  if (2 * r > o) r -= o;
  return static_cast<int>(r);
}

}  // namespace

std::optional<DihedralElement> dihedral_element(const SurfaceModel& m, const std::vector<Generator>& run) {
  DihedralElement d;
  for (const auto& g : run) {
    if (!in_pair(m, g)) return std::nullopt;
    if (g.exponent % 2 == 0) continue;
    if (g.symmetry == m.dihedral()->first) {
      d.r ^= 1;
    } else if (d.r == 0) {
      d.k -= 1;
      d.r = 1;
    } else {
      d.k += 1;
      d.r = 0;
    }
  }
  if (auto order = m.dihedral_order()) d.k = ((d.k % *order) + *order) % *order;
  return d;
}

std::vector<Generator> dihedral_word(const SurfaceModel& m, DihedralElement e) {
  const auto& [s1, s2] = *m.dihedral();
  auto length = [&](long long k) { return e.r == 0 ? 2 * std::llabs(k) : (k >= 0 ? 2 * k + 1 : 2 * -k - 1); };
  long long k = e.k;
  if (auto order = m.dihedral_order(); order && k > 0) {
    if (length(k - *order) < length(k)) k -= *order;
  }
  std::vector<Generator> out;
  auto pairs = [&](const std::string& x, const std::string& y, long long times) {
    for (long long t = 0; t < times; ++t) {
      out.push_back(Generator::sym(x));
      out.push_back(Generator::sym(y));
    }
  };
  if (e.r == 0) {
    if (k > 0) pairs(s1, s2, k);
    if (k < 0) pairs(s2, s1, -k);
  } else if (k >= 0) {
    pairs(s1, s2, k);
    out.push_back(Generator::sym(s1));
  } else {
    pairs(s2, s1, -k - 1);
    out.push_back(Generator::sym(s2));
  }
  return out;
}

std::vector<Generator> reduce_symmetry_letters(const SurfaceModel& m, std::vector<Generator> letters) {
  while (true) {
    std::vector<Generator> out;
    for (std::size_t i = 0; i < letters.size();) {
      if (in_pair(m, letters[i])) {
        std::size_t j = i;
        while (j < letters.size() && in_pair(m, letters[j])) ++j;
        std::vector<Generator> run(letters.begin() + i, letters.begin() + j);
        auto word = dihedral_word(m, *dihedral_element(m, run));
        out.insert(out.end(), word.begin(), word.end());
        i = j;
        continue;
      }
      Generator g = letters[i++];
      g.exponent = reduce_exponent(m, g.symmetry, g.exponent);
      if (!out.empty() && out.back().same_base(g)) {
        out.back().exponent = reduce_exponent(m, g.symmetry, out.back().exponent + g.exponent);
        if (out.back().exponent == 0) out.pop_back();
      } else if (g.exponent != 0) {
        out.push_back(g);
      }
    }
    if (out == letters) return out;
    letters = std::move(out);
  }
}

}  // namespace mcg
