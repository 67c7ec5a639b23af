#include "mcg/homology.hpp"

#include <algorithm>
#include <sstream>

namespace mcg {

namespace {

long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::EvaluationError, "integer overflow in homology arithmetic");
  return r;
}

long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::EvaluationError, "integer overflow in homology arithmetic");
  return r;
}

long long coeff_at(const SparseVec& v, int k) {
  auto it = std::lower_bound(v.begin(), v.end(), std::pair<int, long long>{k, LLONG_MIN});
  return (it != v.end() && it->first == k) ? it->second : 0;
}

}  // namespace

SparseVec unit_vector(int k) { return {{k, 1}}; }

SparseVec add_scaled(const SparseVec& x, long long s, const SparseVec& y) {
  SparseVec out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.push_back(x[i++]);
    } else if (i == x.size() || y[j].first < x[i].first) {
      long long v = checked_mul(s, y[j].second);
      if (v) out.emplace_back(y[j].first, v);
      ++j;
    } else {
      long long v = checked_add(x[i].second, checked_mul(s, y[j].second));
      if (v) out.emplace_back(x[i].first, v);
      ++i;
      ++j;
    }
  }
  return out;
}

// ---------------------------------------------------------------- basis

TruncatedBasis::TruncatedBasis(ModelPtr model, int window) : model_(std::move(model)), window_(window) {
  if (window < 2) throw Error(ErrorCode::OutOfWindow, "homology window must be at least 2");
  handles_ = model_->handles(window);
  for (std::size_t k = 0; k < handles_.size(); ++k) index_.emplace(handles_[k], static_cast<int>(k));
}

std::optional<int> TruncatedBasis::handle_index(const HandleCoord& h) const {
  auto it = index_.find(h);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string TruncatedBasis::name(int k) const {
  const auto& h = handles_[k / 2];
  std::string s = k % 2 ? "b(" : "a(";
  for (std::size_t t = 0; t < h.size(); ++t) s += (t ? "," : "") + std::to_string(h[t]);
  return s + ")";
}

std::string TruncatedBasis::format(const SparseVec& v) const {
  if (v.empty()) return "0";
  std::string s;
  for (const auto& [k, c] : v) {
    if (!s.empty()) s += c < 0 ? " - " : " + ";
    else if (c < 0) s += "-";
    long long a = c < 0 ? -c : c;
    if (a != 1) s += std::to_string(a) + "*";
    s += name(k);
  }
  return s;
}

long long TruncatedBasis::pairing(int i, int j) const {
  if (i / 2 != j / 2 || i == j) return 0;
  return i % 2 == 0 ? 1 : -1;
}

long long TruncatedBasis::pairing_with_basis(const SparseVec& x, int k) const {
  // <a,b> = 1: <x, a_h> = -x_b, <x, b_h> = x_a.
  if (k % 2 == 0) return -coeff_at(x, k + 1);
  return coeff_at(x, k - 1);
}

long long TruncatedBasis::pairing(const SparseVec& x, const SparseVec& y) const {
  long long total = 0;
  for (const auto& [k, c] : y) total = checked_add(total, checked_mul(c, pairing_with_basis(x, k)));
  return total;
}

std::optional<SparseVec> TruncatedBasis::class_of(const CurveLabel& c) const {
  SparseVec out;
  for (const auto& comp : model_->homology_class(c)) {
    auto h = handle_index(comp.handle);
    if (!h) return std::nullopt;
    out = add_scaled(out, comp.coeff, unit_vector(2 * *h + (comp.beta ? 1 : 0)));
  }
  return out;
}

// ---------------------------------------------------------------- matrix

SparseVec IntMatrix::column(int k) const {
  auto it = changed_.find(k);
  return it == changed_.end() ? unit_vector(k) : it->second;
}

void IntMatrix::set_column(int k, SparseVec v) {
  if (v.size() == 1 && v[0].first == k && v[0].second == 1) {
    changed_.erase(k);
  } else {
    changed_[k] = std::move(v);
  }
}

void IntMatrix::invalidate(int k) {
  invalid_.insert(k);
  changed_.erase(k);
}

std::optional<SparseVec> IntMatrix::apply(const SparseVec& v) const {
  SparseVec out;
  for (const auto& [k, c] : v) {
    if (invalid_.count(k)) return std::nullopt;
    out = add_scaled(out, c, column(k));
  }
  return out;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  IntMatrix out(dim_);
  std::set<int> touched(rhs.invalid_);
  for (const auto& [k, v] : rhs.changed_) touched.insert(k);
  for (const auto& [k, v] : changed_) touched.insert(k);
  for (int k : invalid_) touched.insert(k);
  for (int k : touched) {
    if (!rhs.valid(k)) {
      out.invalidate(k);
      continue;
    }
    auto img = apply(rhs.column(k));
    if (!img) {
      out.invalidate(k);
    } else {
      out.set_column(k, std::move(*img));
    }
  }
  return out;
}

bool IntMatrix::agrees_with(const IntMatrix& other, int* first_difference) const {
  std::set<int> touched;
  for (const auto& [k, v] : changed_) touched.insert(k);
  for (const auto& [k, v] : other.changed_) touched.insert(k);
  for (int k : touched) {
    if (!valid(k) || !other.valid(k)) continue;
    if (column(k) != other.column(k)) {
      if (first_difference) *first_difference = k;
      return false;
    }
  }
  return true;
}

bool IntMatrix::is_identity_on_valid() const { return agrees_with(IntMatrix(dim_)); }

std::string IntMatrix::to_grid() const {
  std::ostringstream out;
  for (int r = 0; r < dim_; ++r) {
    for (int c = 0; c < dim_; ++c) {
      if (c) out << ' ';
      if (!valid(c)) {
        out << '*';
      } else {
        out << coeff_at(column(c), r);
      }
    }
    out << '\n';
  }
  return out.str();
}

std::string_view to_string(HomologyCheck::Kind k) {
  switch (k) {
    case HomologyCheck::Kind::Consistent: return "consistent";
    case HomologyCheck::Kind::Refuted: return "refuted";
    case HomologyCheck::Kind::Inconclusive: return "inconclusive";
  }
  return "?";
}

// ---------------------------------------------------------------- oracle

HomologyOracle::HomologyOracle(ModelPtr model, int window) : basis_(std::move(model), window) {
  const auto& m = *basis_.model();
  for (const auto& s : m.primitive_symmetries()) {
    if (!m.has_label_action(s)) continue;
    symmetries_.emplace(s, label_map([&](const CurveLabel& c) { return m.try_apply_symmetry(s, c); }));
  }
}

HomologyOracle::LetterMap HomologyOracle::label_map(
    const std::function<std::optional<CurveLabel>(const CurveLabel&)>& f) const {
  const auto& m = *basis_.model();
  LetterMap out;
  out.image.resize(basis_.dim());
  for (std::size_t h = 0; h < basis_.handles().size(); ++h) {
    const auto& coord = basis_.handles()[h];
    for (int beta = 0; beta < 2; ++beta) {
      auto img = f(beta ? m.beta_label(coord) : m.alpha_label(coord));
      if (img && m.valid_label(*img)) out.image[2 * h + beta] = basis_.class_of(*img);
    }
  }
  return out;
}

const HomologyOracle::LetterMap* HomologyOracle::symmetry_map(const std::string& primitive) const {
  auto it = symmetries_.find(primitive);
  return it == symmetries_.end() ? nullptr : &it->second;
}

HomologyOracle::LetterMap HomologyOracle::shift_map(const ShiftLabel& h, int sign) const {
  const auto& m = *basis_.model();
  return label_map([&](const CurveLabel& c) -> std::optional<CurveLabel> {
    auto a = m.apply_shift(h, sign, c);
    if (a.kind == ShiftAction::Kind::Undefined) return std::nullopt;
    return a.kind == ShiftAction::Kind::Moved ? a.image : c;
  });
}

IntMatrix HomologyOracle::to_matrix(const LetterMap& m, int dim) {
  IntMatrix out(dim);
  for (int k = 0; k < dim; ++k) {
    if (m.image[k]) {
      out.set_column(k, *m.image[k]);
    } else {
      out.invalidate(k);
    }
  }
  return out;
}

IntMatrix HomologyOracle::twist_matrix(const CurveLabel& c, long long power) const {
  auto cls = basis_.class_of(c);
  if (!cls) throw Error(ErrorCode::OutOfWindow, to_string(c) + " lies outside the homology window");
  IntMatrix out(basis_.dim());
  // Only basis vectors pairing nontrivially with c move: x -> x + p<c,x>c.
  for (const auto& [k, coeff] : *cls) {
    int partner = k % 2 == 0 ? k + 1 : k - 1;
    long long pair = basis_.pairing_with_basis(*cls, partner);
    if (pair == 0) continue;
    out.set_column(partner, add_scaled(unit_vector(partner), checked_mul(power, pair), *cls));
  }
  return out;
}

IntMatrix HomologyOracle::symmetry_matrix(const std::string& name) const {
  const auto& m = *basis_.model();
  IntMatrix out(basis_.dim());
  for (const auto& [f, e] : m.expand_symmetry(name)) {
    const LetterMap* map = symmetry_map(f);
    if (!map) throw Error(ErrorCode::UndefinedSymmetry, "symmetry '" + f + "' has no action on homology");
    int p = e;
    if (p < 0) {
      auto order = m.declared_order(f);
      if (!order) throw Error(ErrorCode::UndefinedSymmetry, "inverse of '" + f + "' needs a declared order");
      p = static_cast<int>(((p % *order) + *order) % *order);
    }
    IntMatrix factor = to_matrix(*map, basis_.dim());
    for (int t = 0; t < p; ++t) out = out * factor;
  }
  return out;
}

IntMatrix HomologyOracle::shift_matrix(const ShiftLabel& h, int sign) const {
  return to_matrix(shift_map(h, sign), basis_.dim());
}

IntMatrix HomologyOracle::word_matrix(const Word& w) const {
  const auto& m = *basis_.model();
  const int dim = basis_.dim();
  // Letters as column maps, applied right to left to every basis vector.
  struct Step {
    const LetterMap* map = nullptr;
    LetterMap owned;
    SparseVec twist;
    long long power = 0;
  };
  std::vector<Step> steps;
  std::map<std::pair<ShiftLabel, int>, LetterMap> shift_cache;
  for (const auto& g : w.letters()) {
    switch (g.kind) {
      case GenKind::Twist: {
        auto cls = basis_.class_of(g.curve);
        if (!cls) throw Error(ErrorCode::OutOfWindow, to_string(g.curve) + " lies outside the homology window");
        Step s;
        s.twist = *cls;
        s.power = g.exponent;
        steps.push_back(std::move(s));
        break;
      }
      case GenKind::Shift: {
        int sign = g.exponent < 0 ? -1 : 1;
        auto key = std::pair(g.shift, sign);
        auto it = shift_cache.find(key);
        if (it == shift_cache.end()) it = shift_cache.emplace(key, shift_map(g.shift, sign)).first;
        for (int t = 0; t < std::abs(g.exponent); ++t) {
          Step s;
          s.map = &it->second;
          steps.push_back(std::move(s));
        }
        break;
      }
      case GenKind::Symmetry: {
        const LetterMap* map = symmetry_map(g.symmetry);
        if (!map) throw Error(ErrorCode::UndefinedSymmetry, "symmetry '" + g.symmetry + "' has no action on homology");
        int p = g.exponent;
        auto order = m.declared_order(g.symmetry);
        if (order) p = static_cast<int>(((p % *order) + *order) % *order);
        if (p < 0) throw Error(ErrorCode::UndefinedSymmetry, "inverse of '" + g.symmetry + "' needs a declared order");
        for (int t = 0; t < p; ++t) {
          Step s;
          s.map = map;
          steps.push_back(std::move(s));
        }
        break;
      }
    }
  }

  IntMatrix out(dim);
  for (int k = 0; k < dim; ++k) {
    SparseVec v = unit_vector(k);
    bool ok = true;
    for (auto it = steps.rbegin(); it != steps.rend() && ok; ++it) {
      if (it->map) {
        SparseVec next;
        for (const auto& [i, c] : v) {
          const auto& img = it->map->image[i];
          if (!img) {
            ok = false;
            break;
          }
          next = add_scaled(next, c, *img);
        }
        v = std::move(next);
      } else {
        long long pair = basis_.pairing(it->twist, v);
        if (pair) v = add_scaled(v, checked_mul(it->power, pair), it->twist);
      }
    }
    if (!ok) {
      out.invalidate(k);
    } else {
      out.set_column(k, std::move(v));
    }
  }
  return out;
}

bool HomologyOracle::preserves_pairing(const IntMatrix& m) const {
  for (const auto& [i, vi] : m.changed()) {
    // Against unchanged valid columns only the partners of supports can pair.
    std::set<int> partners;
    for (const auto& [k, c] : vi) partners.insert(k % 2 == 0 ? k + 1 : k - 1);
    partners.insert(i % 2 == 0 ? i + 1 : i - 1);
    for (int j : partners) {
      if (!m.valid(j) || m.changed().count(j)) continue;
      if (basis_.pairing_with_basis(vi, j) != basis_.pairing(i, j)) return false;
    }
    for (const auto& [j, vj] : m.changed()) {
      if (j <= i) continue;
      if (basis_.pairing(vi, vj) != basis_.pairing(i, j)) return false;
    }
  }
  return true;
}

HomologyCheck HomologyOracle::verify_identity(const Word& w1, const Word& w2) const {
  require_same_model(w1, w2);
  HomologyCheck out;
  int bound = std::max(displacement_bound(w1), displacement_bound(w2));
  if (basis_.window() < bound) {
    out.detail = "window " + std::to_string(basis_.window()) + " below displacement bound " + std::to_string(bound);
    return out;
  }
  IntMatrix m1, m2;
  try {
    m1 = word_matrix(w1);
    m2 = word_matrix(w2);
  } catch (const Error& e) {
    out.detail = e.detail();
    return out;
  }
  std::size_t compared = 0;
  for (int k = 0; k < basis_.dim(); ++k) {
    if (!m1.valid(k) || !m2.valid(k)) continue;
    ++compared;
  }
  out.compared = compared;
  if (compared == 0) {
    out.detail = "no valid columns";
    return out;
  }
  int diff = -1;
  if (!m1.agrees_with(m2, &diff)) {
    out.kind = HomologyCheck::Kind::Refuted;
    out.detail = basis_.name(diff) + ": " + basis_.format(m1.column(diff)) + " vs " + basis_.format(m2.column(diff));
    return out;
  }
  out.kind = HomologyCheck::Kind::Consistent;
  out.detail = std::to_string(compared) + " columns agree";
  return out;
}

int displacement_bound(const Word& w) {
  long long shifts = 0, reach = 0;
  std::vector<Generator> prefix;  // symmetry letters seen so far
  bool line_model = w.model() && !w.model()->dihedral_order();
  for (const auto& g : w.letters()) {
    if (g.kind == GenKind::Shift) {
      shifts += std::abs(g.exponent);
    } else if (g.kind == GenKind::Symmetry && line_model) {
      prefix.push_back(g);
      if (auto d = dihedral_element(*w.model(), prefix)) reach = std::max(reach, std::llabs(d->k) + 2 * d->r);
    }
  }
  return static_cast<int>(std::min<long long>(2 + shifts + reach, 1 << 30));
}

std::vector<std::string> transvection_self_test(const HomologyOracle& oracle) {
  std::vector<std::string> failures;
  const auto& basis = oracle.basis();
  const auto& m = *basis.model();
  const auto& h = basis.handles().front();
  CurveLabel a = m.alpha_label(h), b = m.beta_label(h);
  auto ta = oracle.twist_matrix(a);
  auto tb = oracle.twist_matrix(b);
  // Right-handed: t_a(b) = b + a, t_a(a) = a.
  SparseVec expect = add_scaled(unit_vector(1), 1, unit_vector(0));
  if (ta.column(1) != expect) failures.push_back("t_a(b) = " + basis.format(ta.column(1)) + ", expected b + a");
  if (ta.column(0) != unit_vector(0)) failures.push_back("t_a does not fix a");
  if (!((ta * tb * ta).agrees_with(tb * ta * tb))) failures.push_back("braid relation fails for a, b");
  if ((ta * tb).agrees_with(tb * ta)) failures.push_back("t_a and t_b commute on homology");
  if (!oracle.preserves_pairing(ta)) failures.push_back("t_a does not preserve the pairing");
  return failures;
}

SweepReport relation_sweep(const HomologyOracle& oracle, int window) {
  SweepReport r;
  const auto& m = *oracle.basis().model();
  std::vector<CurveLabel> labels;
  std::vector<IntMatrix> mats;
  std::vector<SparseVec> classes;
  for (const auto& c : m.labels_in_window(window)) {
    auto cls = oracle.basis().class_of(c);
    if (!cls) continue;
    labels.push_back(c);
    classes.push_back(*cls);
    mats.push_back(oracle.twist_matrix(c));
    ++r.generators;
    if (!oracle.preserves_pairing(mats.back())) r.failures.push_back("twist " + to_string(c) + " breaks the pairing");
  }
  r.labels = labels.size();
  auto fail = [&](const std::string& what, std::size_t i, std::size_t j) {
    if (r.failures.size() < 50) r.failures.push_back(to_string(labels[i]) + ", " + to_string(labels[j]) + ": " + what);
  };
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = i + 1; j < labels.size(); ++j) {
      ++r.pairs;
      const int meet = m.intersection_number(labels[i], labels[j]);
      const IntMatrix& x = mats[i];
      const IntMatrix& y = mats[j];
      const IntMatrix xy = x * y;
      const bool commute = xy.agrees_with(y * x);
      const bool braid = (xy * x).agrees_with(y * x * y);
      r.commuting += commute;
      r.braiding += braid;
      const auto& u = classes[i];
      const bool homologous = u == classes[j] || add_scaled(u, 1, classes[j]).empty();
      if (commute != (meet == 0)) fail("commutation disagrees with intersection number " + std::to_string(meet), i, j);
      if (homologous && meet == 0) {
        ++r.homologous;
        continue;
      }
      if (braid != (meet == 1)) fail("braid identity disagrees with intersection number " + std::to_string(meet), i, j);
    }
  }
  for (const auto& s : m.primitive_symmetries()) {
    if (!m.has_label_action(s)) continue;
    ++r.generators;
    if (!oracle.preserves_pairing(oracle.symmetry_matrix(s))) r.failures.push_back("symmetry " + s + " breaks the pairing");
  }
  if (m.has_shifts() && m.n()) {
    for (int p = 1; p <= *m.n(); ++p) {
      ShiftLabel h{p, p % *m.n() + 1};
      for (int sign : {1, -1}) {
        ++r.generators;
        if (!oracle.preserves_pairing(oracle.shift_matrix(h, sign)))
          r.failures.push_back("shift " + to_string(h) + " breaks the pairing");
      }
    }
  }
  return r;
}

HomologyCheck verify_identity_homology(const Word& w1, const Word& w2, int window) {
  require_same_model(w1, w2);
  if (!w1.model()) return {HomologyCheck::Kind::Consistent, "empty words", 0};
  HomologyOracle oracle(w1.model(), window);
  return oracle.verify_identity(w1, w2);
}

}  // namespace mcg
