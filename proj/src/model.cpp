#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "mcg/model.hpp"

namespace mcg {

SurfaceModel::SurfaceModel(ModelSpec spec, std::optional<int> n) : spec_(std::move(spec)) {
  if (spec_.kind == ModelKind::Sn) {
    if (!n) throw Error(ErrorCode::ModelError, "S(n) model requires the parameter n");
    long long min_n = spec_.min_n.value_or(3);
    if (*n < min_n) {
      throw Error(ErrorCode::ModelError,
                  "S(n) model requires n >= " + std::to_string(min_n) + ", got " + std::to_string(*n));
    }
    n_ = n;
  }
  Env env;
  if (spec_.dihedral_order) dihedral_order_ = eval(*spec_.dihedral_order, env);
  for (const auto& [name, e] : spec_.orders) orders_.emplace_back(name, eval(e, env));

  std::set<std::string> names;
  for (const auto& s : spec_.symmetries) {
    if (!names.insert(s.name).second) throw Error(ErrorCode::ModelError, "duplicate symmetry " + s.name);
  }
  for (const auto& a : spec_.aliases) {
    if (!names.insert(a.name).second) throw Error(ErrorCode::ModelError, "duplicate symmetry " + a.name);
    for (const auto& [f, e] : a.factors) {
      if (!find_symmetry(f)) {
        throw Error(ErrorCode::ModelError, "alias " + a.name + " uses unknown primitive " + f);
      }
    }
  }
}

std::string SurfaceModel::description() const {
  std::string s(to_string(kind()));
  if (n_) s += "(n=" + std::to_string(*n_) + ")";
  return s;
}

long long SurfaceModel::eval(const IntExpr& e, const Env& env) const {
  auto lookup = [&](const std::string& name) -> std::optional<long long> {
    if (auto it = env.find(name); it != env.end()) return it->second;
    if (name == "n" && n_) return *n_;
    return std::nullopt;
  };
  std::optional<long long> modulus;
  if (n_) modulus = *n_;
  return e.eval(lookup, modulus);
}

std::vector<long long> SurfaceModel::coords(const CurveLabel& c) const {
  if (has_ends()) return {c.genus, c.end.value_or(0)};
  auto it = spec_.families.find(c.family);
  if (it != spec_.families.end() && it->second.kind == DomainKind::NonZero) {
    return {c.genus > 0 ? c.genus : c.genus + 1};
  }
  return {c.genus};
}

CurveLabel SurfaceModel::from_coords(Family f, const std::vector<long long>& xs) const {
  CurveLabel c;
  c.family = f;
  if (has_ends()) {
    if (xs.size() != 2) throw Error(ErrorCode::ModelError, "S(n) labels take two indices");
    c.genus = static_cast<int>(xs[0]);
    c.end = static_cast<int>(reduce_mod(xs[1], *n_));
    return c;
  }
  if (xs.size() != 1) throw Error(ErrorCode::ModelError, "line-model labels take one index");
  auto it = spec_.families.find(f);
  if (it != spec_.families.end() && it->second.kind == DomainKind::NonZero) {
    c.genus = static_cast<int>(xs[0] > 0 ? xs[0] : xs[0] - 1);
  } else {
    c.genus = static_cast<int>(xs[0]);
  }
  return c;
}

CurveLabel SurfaceModel::canonical(CurveLabel c) const {
  if (has_ends() && c.end) c.end = static_cast<int>(reduce_mod(*c.end, *n_));
  return c;
}

bool SurfaceModel::valid_label(const CurveLabel& c) const {
  auto it = spec_.families.find(c.family);
  if (it == spec_.families.end()) return false;
  if (has_ends()) {
    if (!c.end || *c.end < 1 || *c.end > *n_) return false;
  } else if (c.end) {
    return false;
  }
  switch (it->second.kind) {
    case DomainKind::AtLeast: return c.genus >= it->second.min;
    case DomainKind::NonZero: return c.genus != 0;
    case DomainKind::Any: return true;
  }
  return false;
}

void SurfaceModel::check_label(const CurveLabel& c) const {
  if (!valid_label(c)) {
    throw Error(ErrorCode::InvalidLabel, to_string(c) + " is not a curve of the " + description() + " model");
  }
}

void SurfaceModel::check_shift(const ShiftLabel& h) const {
  if (!has_shifts()) {
    throw Error(ErrorCode::InvalidLabel, "the " + description() + " model has no primitive handle shifts");
  }
  if (h.from == h.to || h.from < 1 || h.to < 1 || h.from > *n_ || h.to > *n_) {
    throw Error(ErrorCode::InvalidLabel, to_string(h) + " needs two distinct ends in 1.." + std::to_string(*n_));
  }
}

bool SurfaceModel::match(const LabelPattern& p, const CurveLabel& c, Env& env) const {
  if (p.family != c.family) return false;
  auto xs = coords(c);
  if (xs.size() != p.slots.size()) return false;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const auto& s = p.slots[k];
    if (s.literal) {
      if (s.value != xs[k]) return false;
      continue;
    }
    if (auto it = env.find(s.var); it != env.end()) {
      if (it->second != xs[k]) return false;
    } else if (s.var == "n" && n_) {
      if (*n_ != xs[k]) return false;
    } else {
      env[s.var] = xs[k];
    }
  }
  return true;
}

bool SurfaceModel::conditions_hold(const std::vector<Condition>& conds, const Env& env) const {
  for (const auto& c : conds) {
    long long a = eval(c.lhs, env), b = eval(c.rhs, env);
    bool ok = c.op == "==" ? a == b
              : c.op == "!=" ? a != b
              : c.op == "<"  ? a < b
              : c.op == "<=" ? a <= b
              : c.op == ">"  ? a > b
                             : a >= b;
    if (!ok) return false;
  }
  return true;
}

CurveLabel SurfaceModel::build(const LabelImage& img, const Env& env) const {
  std::vector<long long> xs;
  for (const auto& e : img.slots) xs.push_back(eval(e, env));
  return from_coords(img.family, xs);
}

std::optional<std::optional<CurveLabel>> SurfaceModel::apply_rules(const std::vector<RewriteRule>& rules,
                                                                   const CurveLabel& c, Env env) const {
  for (const auto& r : rules) {
    Env local = env;
    if (!match(r.lhs, c, local)) continue;
    if (!conditions_hold(r.conditions, local)) continue;
    if (!r.rhs) return std::optional<CurveLabel>{};
    return std::optional<CurveLabel>{build(*r.rhs, local)};
  }
  return std::nullopt;
}

std::vector<CurveLabel> SurfaceModel::meet_partners(const CurveLabel& c) const {
  std::vector<CurveLabel> out;
  for (const auto& r : spec_.meets) {
    Env env;
    if (!match(r.lhs, c, env) || !conditions_hold(r.conditions, env)) continue;
    out.push_back(build(*r.rhs, env));
  }
  return out;
}

int SurfaceModel::intersection_number(const CurveLabel& c1, const CurveLabel& c2) const {
  check_label(c1);
  check_label(c2);
  if (c1 == c2) return 0;
  for (const auto& y : meet_partners(c1))
    if (y == c2) return 1;
  for (const auto& y : meet_partners(c2))
    if (y == c1) return 1;
  return 0;
}

const SymmetryDef* SurfaceModel::find_symmetry(const std::string& name) const {
  for (const auto& s : spec_.symmetries)
    if (s.name == name) return &s;
  return nullptr;
}

const AliasDef* SurfaceModel::find_alias(const std::string& name) const {
  for (const auto& a : spec_.aliases)
    if (a.name == name) return &a;
  return nullptr;
}

bool SurfaceModel::is_symmetry(const std::string& name) const { return find_symmetry(name) || find_alias(name); }
bool SurfaceModel::is_primitive_symmetry(const std::string& name) const { return find_symmetry(name) != nullptr; }
bool SurfaceModel::is_alias(const std::string& name) const { return find_alias(name) != nullptr; }

std::vector<std::string> SurfaceModel::primitive_symmetries() const {
  std::vector<std::string> out;
  for (const auto& s : spec_.symmetries) out.push_back(s.name);
  return out;
}

std::vector<std::string> SurfaceModel::alias_names() const {
  std::vector<std::string> out;
  for (const auto& a : spec_.aliases) out.push_back(a.name);
  return out;
}

std::vector<std::pair<std::string, int>> SurfaceModel::expand_symmetry(const std::string& name) const {
  if (find_symmetry(name)) return {{name, 1}};
  if (const AliasDef* a = find_alias(name)) return a->factors;
  throw Error(ErrorCode::UndefinedSymmetry, "symmetry '" + name + "' is not defined in the " + description() + " model");
}

bool SurfaceModel::has_label_action(const std::string& primitive) const {
  const SymmetryDef* s = find_symmetry(primitive);
  return s && !s->rules.empty();
}

std::optional<long long> SurfaceModel::declared_order(const std::string& name) const {
  for (const auto& [n, o] : orders_)
    if (n == name) return o;
  return std::nullopt;
}

std::optional<CurveLabel> SurfaceModel::try_apply_symmetry(const std::string& primitive, const CurveLabel& c) const {
  const SymmetryDef* s = find_symmetry(primitive);
  if (!s || s->rules.empty()) return std::nullopt;
  auto r = apply_rules(s->rules, c, {});
  if (!r || !*r) return std::nullopt;
  return **r;
}

namespace {

// Exponent of a primitive symmetry reduced to a non-negative power.
int positive_power(const SurfaceModel& m, const std::string& name, int e) {
  if (e >= 0) return e;
  auto order = m.declared_order(name);
  if (!order) {
    throw Error(ErrorCode::UndefinedSymmetry, "inverse of '" + name + "' needs a declared order");
  }
  long long o = *order;
  return static_cast<int>(((e % o) + o) % o);
}

}  // namespace

CurveLabel SurfaceModel::apply_symmetry(const std::string& name, const CurveLabel& c) const {
  check_label(c);
  auto factors = expand_symmetry(name);
  CurveLabel cur = c;
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
    int power = positive_power(*this, it->first, it->second);
    for (int k = 0; k < power; ++k) {
      auto img = try_apply_symmetry(it->first, cur);
      if (!img) {
        throw Error(ErrorCode::UndefinedSymmetry,
                    "symmetry '" + it->first + "' has no label action on " + to_string(cur));
      }
      cur = *img;
    }
  }
  return cur;
}

int SurfaceModel::map_end(const std::string& primitive, int end) const {
  const SymmetryDef* s = find_symmetry(primitive);
  if (!s || !n_) throw Error(ErrorCode::UndefinedSymmetry, "symmetry '" + primitive + "' has no end action");
  if (s->end_map) {
    Env env{{s->end_map->first, end}};
    return static_cast<int>(reduce_mod(eval(s->end_map->second, env), *n_));
  }
  if (!s->end_cycles.empty()) {
    Env env;
    for (const auto& cycle : s->end_cycles) {
      for (std::size_t k = 0; k < cycle.size(); ++k) {
        if (reduce_mod(eval(cycle[k], env), *n_) == end) {
          return static_cast<int>(reduce_mod(eval(cycle[(k + 1) % cycle.size()], env), *n_));
        }
      }
    }
    return end;
  }
  throw Error(ErrorCode::UndefinedSymmetry, "symmetry '" + primitive + "' has no end action");
}

std::optional<std::vector<int>> SurfaceModel::end_permutation(const std::string& primitive) const {
  const SymmetryDef* s = find_symmetry(primitive);
  if (!s || !n_ || (!s->end_map && s->end_cycles.empty())) return std::nullopt;
  std::vector<int> perm(*n_);
  for (int j = 1; j <= *n_; ++j) perm[j - 1] = map_end(primitive, j) - 1;
  return perm;
}

std::pair<ShiftLabel, int> SurfaceModel::canonical_shift(const ShiftLabel& h) const {
  if (h.from < h.to) return {h, 1};
  return {ShiftLabel{h.to, h.from}, -1};
}

bool SurfaceModel::shifts_disjoint(const ShiftLabel& a, const ShiftLabel& b) const {
  return a.from != b.from && a.from != b.to && a.to != b.from && a.to != b.to;
}

std::pair<ShiftLabel, int> SurfaceModel::apply_symmetry_shift(const std::string& name, const ShiftLabel& h) const {
  check_shift(h);
  auto factors = expand_symmetry(name);
  ShiftLabel cur = h;
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
    int power = positive_power(*this, it->first, it->second);
    for (int k = 0; k < power; ++k) cur = ShiftLabel{map_end(it->first, cur.from), map_end(it->first, cur.to)};
  }
  return canonical_shift(cur);
}

ShiftAction SurfaceModel::apply_shift(const ShiftLabel& h, int exponent_sign, const CurveLabel& c) const {
  if (!spec_.shift) throw Error(ErrorCode::WrongModel, "the " + description() + " model has no handle shifts");
  ShiftLabel eff = exponent_sign < 0 ? ShiftLabel{h.to, h.from} : h;
  Env env{{spec_.shift->from_var, eff.from}, {spec_.shift->to_var, eff.to}};
  auto r = apply_rules(spec_.shift->rules, c, env);
  if (!r) return {ShiftAction::Kind::Fixed, c};
  if (!*r) return {ShiftAction::Kind::Undefined, c};
  if (**r == c) return {ShiftAction::Kind::Fixed, c};
  return {ShiftAction::Kind::Moved, **r};
}

std::vector<ClassComponent> SurfaceModel::homology_class(const CurveLabel& c) const {
  check_label(c);
  for (const auto& r : spec_.classes) {
    Env env;
    if (!match(r.lhs, c, env) || !conditions_hold(r.conditions, env)) continue;
    std::vector<ClassComponent> out;
    for (const auto& t : r.terms) {
      ClassComponent comp;
      comp.beta = t.beta;
      comp.coeff = t.coeff;
      for (const auto& e : t.handle) comp.handle.push_back(eval(e, env));
      if (has_ends() && comp.handle.size() == 2) comp.handle[1] = reduce_mod(comp.handle[1], *n_);
      out.push_back(std::move(comp));
    }
    return out;
  }
  throw Error(ErrorCode::ModelError, "no homology class declared for " + to_string(c));
}

std::vector<HandleCoord> SurfaceModel::handles(int window) const {
  std::vector<HandleCoord> out;
  if (has_ends()) {
    for (long long j = 1; j <= *n_; ++j)
      for (long long i = 1; i <= window; ++i) out.push_back({i, j});
  } else {
    for (long long p = 1 - window; p <= window; ++p) out.push_back({p});
  }
  return out;
}

bool SurfaceModel::handle_in_window(const HandleCoord& h, int window) const {
  if (has_ends()) return h.size() == 2 && h[0] >= 1 && h[0] <= window && h[1] >= 1 && h[1] <= *n_;
  return h.size() == 1 && h[0] >= 1 - window && h[0] <= window;
}

CurveLabel SurfaceModel::alpha_label(const HandleCoord& h) const { return from_coords(Family::A, h); }
CurveLabel SurfaceModel::beta_label(const HandleCoord& h) const { return from_coords(Family::B, h); }

std::vector<CurveLabel> SurfaceModel::labels_in_window(int window) const {
  std::vector<CurveLabel> out;
  for (const auto& [family, domain] : spec_.families) {
    bool is_c = family == Family::C;
    if (has_ends()) {
      long long lo = domain.kind == DomainKind::AtLeast ? domain.min : 1;
      long long hi = is_c ? window - 1 : window;
      for (long long j = 1; j <= *n_; ++j)
        for (long long i = lo; i <= hi; ++i) out.push_back(from_coords(family, {i, j}));
    } else {
      long long lo = 1 - window, hi = is_c ? window - 1 : window;
      for (long long p = lo; p <= hi; ++p) out.push_back(from_coords(family, {p}));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

ModelPtr make_builtin_model(std::string_view kind, std::optional<int> n) {
  std::string name = std::string(kind) + ".model";
  auto spec = parse_model(builtin_model_text(kind), name);
  if (spec.kind != ModelKind::Sn) n.reset();
  return std::make_shared<const SurfaceModel>(std::move(spec), n);
}

ModelPtr make_model(std::string_view text, std::optional<int> n, std::string source_name) {
  auto spec = parse_model(text, std::move(source_name));
  if (spec.kind != ModelKind::Sn) n.reset();
  return std::make_shared<const SurfaceModel>(std::move(spec), n);
}

}  // namespace mcg
