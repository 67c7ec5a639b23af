#include "mcg/script.hpp"

#include <chrono>
#include <cstdint>
#include <ctime>
#include <iomanip>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mcg/homology.hpp"
#include "mcg/lexer.hpp"
#include "mcg/perm.hpp"

namespace mcg {

namespace {

const std::set<std::string, std::less<>> kReserved = {
    "MODEL", "PARAM", "CONVENTION", "LET", "GEN", "ASSERT_EQ", "ASSERT_INVOLUTION", "ASSERT_PROJECTION",
    "ASSERT_SYMMETRIC", "ASSERT_GOALSET", "CONJ", "INV", "h"};

bool is_family_word(const std::string& s) { return family_from_name(s).has_value(); }

struct Symbols {
  std::set<std::string> symmetries;
  std::set<std::string> bindings;
  std::set<std::string> generated;  // symmetries declared by a bare GEN
  std::set<std::string> params{"n"};
};

Symbols symbols_of(const ModelSpec& spec) {
  Symbols s;
  for (const auto& d : spec.symmetries) s.symmetries.insert(d.name);
  for (const auto& a : spec.aliases) s.symmetries.insert(a.name);
  return s;
}

class ExprParser {
 public:
  ExprParser(TokenStream& ts, const Symbols& sym) : ts_(ts), sym_(sym) {}

  Expr product() {
    Expr first = postfix();
    if (!starts_atom()) return first;
    Expr p;
    p.kind = Expr::Kind::Product;
    p.pos = first.pos;
    p.args.push_back(std::move(first));
    while (starts_atom()) p.args.push_back(postfix());
    return p;
  }

  IntExpr index() {
    const Token& t = ts_.peek();
    IntExpr e = parse_int_expr(ts_);
    check_vars(e, t);
    return e;
  }

  void check_vars(const IntExpr& e, const Token& at) {
    if (e.is_variable() && !sym_.params.count(e.name()))
      throw Error(ErrorCode::UndefinedName, "unknown parameter '" + e.name() + "'", at.pos);
    for (const auto& a : e.args()) check_vars(a, at);
  }

 private:
  bool starts_atom() const {
    const Token& t = ts_.peek();
    if (t.kind == TokenKind::Ident) return true;
    if (t.kind == TokenKind::Int) return true;
    return t.kind == TokenKind::Punct && t.text == "(";
  }

  Expr postfix() {
    Expr e = primary();
    for (;;) {
      if (ts_.peek().text == "~" && ts_.peek().kind == TokenKind::Punct) {
        SourcePos pos = ts_.next().pos;
        e = wrap(Expr::Kind::Inv, std::move(e), pos);
      } else if (ts_.peek().text == "^" && ts_.peek().kind == TokenKind::Punct) {
        SourcePos pos = ts_.next().pos;
        const Token& at = ts_.peek();
        IntExpr k = parse_int_atom(ts_);
        check_vars(k, at);
        e = wrap(Expr::Kind::Power, std::move(e), pos);
        e.exponent = std::move(k);
      } else {
        return e;
      }
    }
  }

  static Expr wrap(Expr::Kind kind, Expr inner, SourcePos pos) {
    Expr e;
    e.kind = kind;
    e.pos = pos;
    e.args.push_back(std::move(inner));
    return e;
  }

  Expr primary() {
    const Token t = ts_.peek();
    Expr e;
    e.pos = t.pos;
    if (t.kind == TokenKind::Int) {
      if (t.text != "1") ts_.fail_at(t, "only 1 (the identity) may appear as a number in a word");
      ts_.next();
      e.kind = Expr::Kind::Identity;
      return e;
    }
    if (t.kind == TokenKind::Punct) {
      if (t.text != "(") ts_.fail_at(t, "expected a word, found '" + t.text + "'");
      ts_.next();
      Expr inner = product();
      ts_.expect(")");
      return inner;
    }
    if (t.kind != TokenKind::Ident) ts_.fail_at(t, "expected a word before end of line");
    if (t.text == "CONJ" || t.text == "INV") {
      ts_.next();
      ts_.expect("(");
      e.kind = t.text == "CONJ" ? Expr::Kind::Conj : Expr::Kind::Inv;
      e.args.push_back(product());
      if (e.kind == Expr::Kind::Conj) {
        ts_.expect(",");
        e.args.push_back(product());
      }
      ts_.expect(")");
      return e;
    }
    const bool literal_head = is_family_word(t.text) || t.text == "h";
    const bool has_bracket = ts_.peek(1).text == "[" || (ts_.peek(1).text == "~" && ts_.peek(2).text == "[");
    if (literal_head && has_bracket) {
      ts_.next();
      bool inverted = ts_.accept("~");
      ts_.expect("[");
      e.kind = t.text == "h" ? Expr::Kind::Shift : Expr::Kind::Twist;
      if (e.kind == Expr::Kind::Twist) e.family = *family_from_name(t.text);
      e.indices.push_back(index());
      while (ts_.accept(",")) e.indices.push_back(index());
      ts_.expect("]");
      if (e.kind == Expr::Kind::Shift && e.indices.size() != 2) ts_.fail_at(t, "a handle shift takes two ends");
      if (inverted) e = wrap(Expr::Kind::Inv, std::move(e), t.pos);
      return e;
    }
    if (kReserved.count(t.text) || is_family_word(t.text)) ts_.fail_at(t, "'" + t.text + "' cannot be used as a name");
    if (!sym_.bindings.count(t.text) && !sym_.symmetries.count(t.text))
      throw Error(ErrorCode::UndefinedName, "undefined name '" + t.text + "'", t.pos);
    ts_.next();
    e.kind = Expr::Kind::Name;
    e.name = t.text;
    return e;
  }

  TokenStream& ts_;
  const Symbols& sym_;
};

std::string join_tokens(TokenStream& ts) {
  std::string s;
  while (!ts.at_end()) {
    if (!s.empty()) s += ' ';
    s += ts.next().text;
  }
  return s;
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.push_back(std::move(line));
    start = end + 1;
  }
  return out;
}

Statement::Kind statement_kind(const std::string& kw, bool* ok) {
  *ok = true;
  if (kw == "LET") return Statement::Kind::Let;
  if (kw == "GEN") return Statement::Kind::Gen;
  if (kw == "ASSERT_EQ") return Statement::Kind::AssertEq;
  if (kw == "ASSERT_INVOLUTION") return Statement::Kind::AssertInvolution;
  if (kw == "ASSERT_PROJECTION") return Statement::Kind::AssertProjection;
  if (kw == "ASSERT_SYMMETRIC") return Statement::Kind::AssertSymmetric;
  if (kw == "ASSERT_GOALSET") return Statement::Kind::AssertGoalset;
  *ok = false;
  return Statement::Kind::Let;
}

void define_name(Symbols& sym, const Token& t) {
  if (kReserved.count(t.text) || is_family_word(t.text))
    throw Error(ErrorCode::ParseError, "'" + t.text + "' cannot be used as a name", t.pos);
  if (sym.bindings.count(t.text) || sym.symmetries.count(t.text) || sym.params.count(t.text))
    throw Error(ErrorCode::Redefinition, "'" + t.text + "' is already defined", t.pos);
  sym.bindings.insert(t.text);
}

std::vector<Expr> expr_list(TokenStream& ts, ExprParser& ep) {
  ts.expect("{");
  std::vector<Expr> out;
  if (ts.accept("}")) return out;
  out.push_back(ep.product());
  while (ts.accept(",")) out.push_back(ep.product());
  ts.expect("}");
  return out;
}

std::string index_text(const IntExpr& e) {
  return e.is_constant() ? std::to_string(e.value()) : e.to_string();
}

std::string exponent_text(const IntExpr& e) {
  if (e.is_constant() || e.is_variable()) return e.to_string();
  return "(" + e.to_string() + ")";
}

std::string literal_text(const Expr& e, bool inverted) {
  std::string s = e.kind == Expr::Kind::Shift ? "h" : std::string(family_name(e.family));
  if (inverted) s += "~";
  s += "[";
  for (std::size_t k = 0; k < e.indices.size(); ++k) s += (k ? "," : "") + index_text(e.indices[k]);
  return s + "]";
}

std::string atom_text(const Expr& e) {
  std::string s = print_expr(e);
  return e.kind == Expr::Kind::Product ? "(" + s + ")" : s;
}

}  // namespace

std::string_view to_string(Statement::Kind k) {
  switch (k) {
    case Statement::Kind::Let: return "LET";
    case Statement::Kind::Gen: return "GEN";
    case Statement::Kind::AssertEq: return "ASSERT_EQ";
    case Statement::Kind::AssertInvolution: return "ASSERT_INVOLUTION";
    case Statement::Kind::AssertProjection: return "ASSERT_PROJECTION";
    case Statement::Kind::AssertSymmetric: return "ASSERT_SYMMETRIC";
    case Statement::Kind::AssertGoalset: return "ASSERT_GOALSET";
  }
  return "?";
}

std::string ScriptHeader::conventions_checksum() const {
  std::uint64_t h = 1469598103934665603ull;
  for (const auto& [k, v] : conventions) {
    for (char c : k + "=" + v + "\n") {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ull;
    }
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

ProofScript parse_script(std::string_view text, const ModelSpec* spec) {
  ProofScript script;
  std::optional<ModelSpec> own;
  Symbols sym;
  bool have_model = false, in_body = false;
  auto lines = split_lines(text);
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const int line_no = static_cast<int>(li) + 1;
    TokenStream ts(tokenize_line(lines[li], line_no), line_no, ErrorCode::ParseError);
    if (ts.at_end()) continue;
    Token kw = ts.expect_ident();
    if (kw.text == "MODEL") {
      if (have_model) ts.fail_at(kw, "MODEL given twice");
      Token m = ts.expect_ident();
      if (m.text != "sn" && m.text != "jacob" && m.text != "lochness")
        ts.fail_at(m, "unknown model '" + m.text + "' (expected sn, jacob or lochness)");
      script.header.model = m.text;
      if (!spec) {
        own = parse_model(builtin_model_text(m.text), m.text);
        spec = &*own;
      }
      auto base = symbols_of(*spec);
      sym.symmetries = base.symmetries;
      have_model = true;
    } else if (kw.text == "PARAM" || kw.text == "CONVENTION") {
      if (!have_model) ts.fail_at(kw, "MODEL must come first");
      if (in_body) ts.fail_at(kw, kw.text + " must precede the statements");
      Token name = ts.expect_ident();
      ts.expect("=");
      if (kw.text == "PARAM") {
        for (const auto& [p, e] : script.header.params)
          if (p == name.text) throw Error(ErrorCode::Redefinition, "parameter '" + p + "' is already defined", name.pos);
        ExprParser ep(ts, sym);
        IntExpr value = ep.index();
        script.header.params.emplace_back(name.text, std::move(value));
        sym.params.insert(name.text);
      } else {
        std::string value = join_tokens(ts);
        if (value.empty()) ts.fail("expected a convention after '='");
        script.header.conventions.emplace_back(name.text, std::move(value));
      }
    } else {
      bool ok;
      Statement st;
      st.kind = statement_kind(kw.text, &ok);
      if (!ok) ts.fail_at(kw, "unknown statement '" + kw.text + "'");
      if (!have_model) ts.fail_at(kw, "MODEL must come first");
      in_body = true;
      st.pos = kw.pos;
      ExprParser ep(ts, sym);
      if (st.is_assertion() && ts.accept("@")) st.tag = ts.expect_ident().text;
      switch (st.kind) {
        case Statement::Kind::Let: {
          Token name = ts.expect_ident();
          ts.expect("=");
          st.exprs.push_back(ep.product());
          define_name(sym, name);
          st.name = name.text;
          break;
        }
        case Statement::Kind::Gen: {
          Token name = ts.expect_ident();
          st.name = name.text;
          if (ts.accept("=")) {
            st.exprs.push_back(ep.product());
            define_name(sym, name);
          } else {
            if (!sym.symmetries.count(name.text))
              throw Error(ErrorCode::UndefinedName, "'" + name.text + "' is not a symmetry of the model", name.pos);
            if (!sym.generated.insert(name.text).second)
              throw Error(ErrorCode::Redefinition, "'" + name.text + "' is already a generator", name.pos);
          }
          break;
        }
        case Statement::Kind::AssertEq:
          st.exprs.push_back(ep.product());
          ts.expect("=");
          st.exprs.push_back(ep.product());
          break;
        case Statement::Kind::AssertInvolution:
          st.exprs.push_back(ep.product());
          ts.expect(",");
          st.exprs.push_back(ep.product());
          break;
        case Statement::Kind::AssertProjection:
          st.exprs.push_back(ep.product());
          ts.expect("=");
          if (ts.peek().text == "(" && ts.peek(1).text == ")") {
            ts.next();
            ts.next();
            st.cycles.emplace_back();
          }
          while (!ts.at_end()) {
            ts.expect("(");
            std::vector<CycleEntry> cyc;
            while (!ts.accept(")")) {
              if (ts.accept("...")) {
                cyc.push_back({true, {}});
              } else {
                cyc.push_back({false, ep.index()});
              }
            }
            if (cyc.empty()) ts.fail("empty cycle");
            st.cycles.push_back(std::move(cyc));
          }
          if (st.cycles.empty()) ts.fail("expected cycle notation");
          break;
        case Statement::Kind::AssertSymmetric:
        case Statement::Kind::AssertGoalset:
          st.exprs = expr_list(ts, ep);
          if (st.exprs.empty()) ts.fail("empty set");
          break;
      }
      if (!ts.at_end()) ts.fail("unexpected '" + ts.peek().text + "'");
      script.statements.push_back(std::move(st));
    }
    if (!ts.at_end()) ts.fail("unexpected '" + ts.peek().text + "'");
  }
  if (!have_model) throw Error(ErrorCode::ParseError, "missing MODEL line", {1, 1});
  return script;
}

std::string print_expr(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Identity: return "1";
    case Expr::Kind::Twist:
    case Expr::Kind::Shift: return literal_text(e, false);
    case Expr::Kind::Name: return e.name;
    case Expr::Kind::Product: {
      std::string s;
      for (std::size_t k = 0; k < e.args.size(); ++k) s += (k ? " " : "") + atom_text(e.args[k]);
      return s;
    }
    case Expr::Kind::Conj: return "CONJ(" + print_expr(e.args[0]) + ", " + print_expr(e.args[1]) + ")";
    case Expr::Kind::Inv: {
      const Expr& x = e.args[0];
      if (x.kind == Expr::Kind::Twist || x.kind == Expr::Kind::Shift) return literal_text(x, true);
      return atom_text(x) + "~";
    }
    case Expr::Kind::Power: return atom_text(e.args[0]) + "^" + exponent_text(e.exponent);
  }
  return "";
}

std::string print_statement(const Statement& s) {
  std::string out(to_string(s.kind));
  if (!s.tag.empty()) out += " @" + s.tag;
  auto list = [&] {
    std::string t = " {";
    for (std::size_t k = 0; k < s.exprs.size(); ++k) t += (k ? ", " : "") + print_expr(s.exprs[k]);
    return t + "}";
  };
  switch (s.kind) {
    case Statement::Kind::Let: out += " " + s.name + " = " + print_expr(s.exprs[0]); break;
    case Statement::Kind::Gen:
      out += " " + s.name;
      if (!s.exprs.empty()) out += " = " + print_expr(s.exprs[0]);
      break;
    case Statement::Kind::AssertEq: out += " " + print_expr(s.exprs[0]) + " = " + print_expr(s.exprs[1]); break;
    case Statement::Kind::AssertInvolution: out += " " + print_expr(s.exprs[0]) + ", " + print_expr(s.exprs[1]); break;
    case Statement::Kind::AssertProjection: {
      out += " " + print_expr(s.exprs[0]) + " =";
      std::string cyc = " ";
      for (const auto& c : s.cycles) {
        cyc += "(";
        for (std::size_t k = 0; k < c.size(); ++k) cyc += (k ? " " : "") + (c[k].ellipsis ? "..." : index_text(c[k].value));
        cyc += ")";
      }
      out += cyc;
      break;
    }
    case Statement::Kind::AssertSymmetric:
    case Statement::Kind::AssertGoalset: out += list(); break;
  }
  return out;
}

std::string print_script(const ProofScript& s) {
  std::string out = "MODEL " + s.header.model + "\n";
  for (const auto& [name, e] : s.header.params) out += "PARAM " + name + " = " + index_text(e) + "\n";
  for (const auto& [key, value] : s.header.conventions) out += "CONVENTION " + key + " = " + value + "\n";
  for (const auto& st : s.statements) out += print_statement(st) + "\n";
  return out;
}

// ------------------------------------------------------------------ evaluation

namespace {

struct Binding {
  Word word;
  bool member = false;
};

class Evaluator {
 public:
  Evaluator(ModelPtr model, std::map<std::string, long long> params)
      : model_(std::move(model)), params_(std::move(params)) {}

  std::map<std::string, Binding> bindings;
  std::set<std::string> generated;
  std::set<std::string> proved;

  long long eval_int(const IntExpr& e, SourcePos pos) const {
    try {
      return e.eval([&](const std::string& name) -> std::optional<long long> {
        auto it = params_.find(name);
        if (it == params_.end()) return std::nullopt;
        return it->second;
      }, model_->n());
    } catch (const Error& err) {
      throw Error(err.code(), err.detail(), pos);
    }
  }

  Word eval(const Expr& e) const {
    switch (e.kind) {
      case Expr::Kind::Identity: return Word(model_);
      case Expr::Kind::Twist: {
        std::vector<long long> idx;
        for (const auto& i : e.indices) idx.push_back(eval_int(i, e.pos));
        CurveLabel c;
        c.family = e.family;
        if (model_->has_ends()) {
          if (idx.size() != 2) throw Error(ErrorCode::InvalidLabel, "labels on this model take two indices", e.pos);
          c.genus = static_cast<int>(idx[0]);
          c.end = static_cast<int>(idx[1]);
        } else {
          if (idx.size() != 1) throw Error(ErrorCode::InvalidLabel, "labels on this model take one index", e.pos);
          c.genus = static_cast<int>(idx[0]);
        }
        c = model_->canonical(c);
        try {
          model_->check_label(c);
        } catch (const Error& err) {
          throw Error(err.code(), err.detail(), e.pos);
        }
        return Word(model_, {Generator::twist(c)});
      }
      case Expr::Kind::Shift: {
        if (!model_->has_shifts()) throw Error(ErrorCode::WrongModel, "this model has no handle shifts", e.pos);
        ShiftLabel h;
        h.from = static_cast<int>(reduce_mod(eval_int(e.indices[0], e.pos), *model_->n()));
        h.to = static_cast<int>(reduce_mod(eval_int(e.indices[1], e.pos), *model_->n()));
        try {
          model_->check_shift(h);
        } catch (const Error& err) {
          throw Error(err.code(), err.detail(), e.pos);
        }
        return Word(model_, {Generator::handle_shift(h)});
      }
      case Expr::Kind::Name: {
        auto it = bindings.find(e.name);
        if (it != bindings.end()) return it->second.word;
        if (!model_->is_symmetry(e.name))
          throw Error(ErrorCode::UndefinedName, "'" + e.name + "' has no value", e.pos);
        std::vector<Generator> letters;
        for (const auto& [prim, exp] : model_->expand_symmetry(e.name)) letters.push_back(Generator::sym(prim, exp));
        return Word(model_, std::move(letters));
      }
      case Expr::Kind::Product: {
        Word w(model_);
        for (const auto& a : e.args) w *= eval(a);
        return free_reduce(w);
      }
      case Expr::Kind::Conj: return conjugate(eval(e.args[0]), eval(e.args[1]));
      case Expr::Kind::Inv: return invert(eval(e.args[0]));
      case Expr::Kind::Power: return power(eval(e.args[0]), eval_int(e.exponent, e.pos));
    }
    return Word(model_);
  }

  std::string key(const Word& w) const {
    auto it = key_cache_.find(to_string(w));
    if (it != key_cache_.end()) return it->second;
    auto r = normalize_cheap(w, kDefaultBudget);
    std::string k = r.complete ? to_string(r.word) : "?" + to_string(w);
    key_cache_.emplace(to_string(w), k);
    return k;
  }

  bool in_proved(const Word& w) const { return proved.count(key(w)) > 0; }

  bool member(const Expr& e) const {
    switch (e.kind) {
      case Expr::Kind::Identity: return true;
      case Expr::Kind::Name: {
        auto it = bindings.find(e.name);
        if (it != bindings.end()) return it->second.member || in_proved(it->second.word);
        if (generated.count(e.name)) return true;
        bool all = model_->is_alias(e.name);
        if (all)
          for (const auto& [prim, exp] : model_->expand_symmetry(e.name)) all = all && generated.count(prim);
        return all || in_proved(eval(e));
      }
      case Expr::Kind::Twist:
      case Expr::Kind::Shift: return in_proved(eval(e));
      default: {
        bool all = true;
        for (const auto& a : e.args) all = all && member(a);
        return all || in_proved(eval(e));
      }
    }
  }

  void add_member(const Word& w) {
    if (proved.insert(key(w)).second) order.push_back(key(w));
  }

  std::vector<std::string> order;

 private:
  ModelPtr model_;
  std::map<std::string, long long> params_;
  mutable std::map<std::string, std::string> key_cache_;
};

std::string verdict_name(const Verdict& v) { return std::string(to_string(v.kind)); }

void check_window(const Word& w, int window) {
  int bound = displacement_bound(w);
  if (window < bound) {
    throw Error(ErrorCode::OutOfWindow, "window " + std::to_string(window) + " below displacement bound " +
                                            std::to_string(bound) + " of " + to_string(w));
  }
}

void take_verdict(StatementResult& r, const Verdict& v) {
  r.verdict = verdict_name(v);
  r.oracle = v.oracle;
  r.budget_used = v.budget_used;
  r.witness = v.witness;
  r.homology = v.homology;
  const bool refuted = v.homology.rfind("refuted", 0) == 0;
  r.passed = v.equal() && !refuted;
  if (v.equal() && refuted) r.message = "rewrite proof contradicts homology";
}

std::vector<int> expand_cycle(const std::vector<CycleEntry>& cyc, const Evaluator& ev, SourcePos pos) {
  std::vector<int> out;
  for (std::size_t k = 0; k < cyc.size(); ++k) {
    if (!cyc[k].ellipsis) {
      out.push_back(static_cast<int>(ev.eval_int(cyc[k].value, pos)));
      continue;
    }
    if (out.empty() || k + 1 >= cyc.size() || cyc[k + 1].ellipsis)
      throw Error(ErrorCode::EvaluationError, "'...' needs a number on both sides", pos);
    long long to = ev.eval_int(cyc[k + 1].value, pos);
    for (long long v = out.back() + 1; v < to; ++v) out.push_back(static_cast<int>(v));
  }
  return out;
}

}  // namespace

Word parse_word(std::string_view text, const ModelPtr& model) {
  Symbols sym = symbols_of(model->spec());
  TokenStream ts(tokenize_line(text, 1), 1, ErrorCode::ParseError);
  if (ts.at_end()) return Word(model);
  ExprParser ep(ts, sym);
  Expr e = ep.product();
  if (!ts.at_end()) ts.fail("unexpected '" + ts.peek().text + "'");
  std::map<std::string, long long> params;
  if (model->n()) params["n"] = *model->n();
  return Evaluator(model, params).eval(e);
}

bool ReplayReport::passed() const {
  for (const auto& r : results)
    if (!r.passed) return false;
  return true;
}

std::size_t ReplayReport::assertions() const {
  std::size_t k = 0;
  for (const auto& r : results) k += is_assertion(r.kind);
  return k;
}

std::size_t ReplayReport::failures() const {
  std::size_t k = 0;
  for (const auto& r : results) k += !r.passed;
  return k;
}

ReplayReport replay(const ProofScript& script, const ReplayOptions& opt, std::string script_name) {
  auto t0 = std::chrono::steady_clock::now();
  ReplayReport rep;
  rep.script = std::move(script_name);
  rep.model = script.header.model;
  rep.budget = opt.budget;
  rep.window = opt.window;
  rep.conventions_checksum = script.header.conventions_checksum();

  // Parameters: n first (command line over script), then the rest in order.
  std::map<std::string, long long> params;
  std::optional<int> n = opt.n;
  for (const auto& [name, e] : script.header.params) {
    if (name == "n" && !n) {
      if (!e.is_constant()) throw Error(ErrorCode::EvaluationError, "PARAM n must be a number");
      n = static_cast<int>(e.value());
    }
  }
  ModelPtr model = opt.model ? opt.model : make_builtin_model(script.header.model, n);
  if (opt.model && opt.model->n()) n = *opt.model->n();
  if (model->has_ends() && !n) throw Error(ErrorCode::EvaluationError, "model needs a value for n");
  if (n) params["n"] = *n;
  rep.n = model->has_ends() ? n : std::nullopt;
  Evaluator ev(model, {});
  for (const auto& [name, e] : script.header.params) {
    if (name == "n") continue;
    params[name] = Evaluator(model, params).eval_int(e, {});
  }
  ev = Evaluator(model, params);

  for (const auto& [key, value] : script.header.conventions) {
    bool ok = true;
    if (key == "conj") ok = value == "g x g ~";
    else if (key == "twist") ok = value == "right";
    else if (key == "compose") ok = value == "f g = f ( g ( x ) )";
    if (!ok) throw Error(ErrorCode::EvaluationError, "convention '" + key + " = " + value + "' is not the engine's");
  }

  auto oracle = std::make_shared<const HomologyOracle>(model, opt.window);
  EquivalenceOptions eo;
  eo.budget = opt.budget;
  eo.window = opt.window;
  eo.oracle = oracle;

  for (std::size_t si = 0; si < script.statements.size(); ++si) {
    const Statement& st = script.statements[si];
    auto s0 = std::chrono::steady_clock::now();
    StatementResult r;
    r.index = si;
    r.line = st.pos.line;
    r.tag = st.tag;
    r.kind = st.kind;
    r.statement = print_statement(st);
    r.verdict = "-";
    try {
      switch (st.kind) {
        case Statement::Kind::Let:
        case Statement::Kind::Gen: {
          if (st.kind == Statement::Kind::Gen && st.exprs.empty()) {
            ev.generated.insert(st.name);
            ev.add_member(ev.eval(Expr{Expr::Kind::Name, Family::A, {}, st.name, {}, {}, st.pos}));
            break;
          }
          Word w = ev.eval(st.exprs[0]);
          auto nr = normalize_cheap(w, kDefaultBudget);
          if (nr.complete) w = nr.word;
          bool member = st.kind == Statement::Kind::Gen || ev.member(st.exprs[0]);
          ev.bindings[st.name] = Binding{w, member};
          if (member) ev.add_member(w);
          r.witness = to_string(w);
          r.verdict = member ? "member" : "-";
          break;
        }
        case Statement::Kind::AssertEq: {
          Word a = ev.eval(st.exprs[0]), b = ev.eval(st.exprs[1]);
          check_window(a * invert(b), opt.window);
          take_verdict(r, equivalent(a, b, eo));
          if (r.passed) {
            if (ev.member(st.exprs[0])) ev.add_member(b);
            if (ev.member(st.exprs[1])) ev.add_member(a);
          }
          break;
        }
        case Statement::Kind::AssertInvolution: {
          Word rho = ev.eval(st.exprs[0]), x = ev.eval(st.exprs[1]);
          check_window(rho * x * rho * x, opt.window);
          take_verdict(r, check_involution(rho, x, eo));
          break;
        }
        case Statement::Kind::AssertProjection: {
          Word w = ev.eval(st.exprs[0]);
          Permutation got = project(w);
          Permutation want(got.degree());
          for (const auto& c : st.cycles) {
            auto pts = expand_cycle(c, ev, st.pos);
            if (pts.empty()) continue;
            std::string txt = "(";
            for (std::size_t k = 0; k < pts.size(); ++k) txt += (k ? " " : "") + std::to_string(pts[k]);
            want = want * parse_cycles(txt + ")", got.degree());
          }
          r.passed = got == want;
          r.verdict = r.passed ? "Yes" : "No";
          r.oracle = "projection";
          r.witness = to_string(got);
          if (!r.passed) r.message = "expected " + to_string(want);
          break;
        }
        case Statement::Kind::AssertSymmetric: {
          std::vector<Permutation> gens;
          for (const auto& e : st.exprs) gens.push_back(project(ev.eval(e)));
          const int deg = gens.front().degree();
          auto cert = certify_full_symmetric(gens, deg);
          r.passed = cert.full;
          r.verdict = cert.full ? "Yes" : "No";
          r.oracle = "schreier-sims";
          r.witness = "order " + cert.order.str() + " of " + factorial(deg).str();
          break;
        }
        case Statement::Kind::AssertGoalset: {
          std::vector<std::string> missing;
          for (const auto& e : st.exprs)
            if (!ev.member(e)) missing.push_back(print_expr(e));
          r.passed = missing.empty();
          r.verdict = r.passed ? "Yes" : "No";
          r.oracle = "membership";
          for (const auto& m : missing) r.witness += (r.witness.empty() ? "" : ", ") + m;
          if (!r.passed) r.message = "not derived: " + r.witness;
          break;
        }
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::OutOfWindow) throw;
      r.passed = false;
      r.verdict = "Error";
      r.message = std::string(to_string(e.code())) + ": " + e.detail();
      if (e.code() == ErrorCode::NotAnInvolution) r.verdict = "Unknown";
    }
    r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - s0).count();
    rep.results.push_back(std::move(r));
  }
  rep.proved_members = ev.order;
  rep.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

std::string format_text(const ReplayReport& r, bool verbose) {
  std::ostringstream out;
  out << "script " << (r.script.empty() ? "<input>" : r.script) << "  model " << r.model;
  if (r.n) out << "  n=" << *r.n;
  out << "  budget " << r.budget << "  window " << r.window << "\n";
  for (const auto& s : r.results) {
    const bool assertion = is_assertion(s.kind);
    if (!assertion && !verbose && s.passed) continue;
    out << (s.passed ? (assertion ? "PASS " : "     ") : "FAIL ") << "line " << s.line << ": " << s.statement << "\n";
    if (assertion || !s.passed) {
      out << "       " << s.verdict;
      if (!s.oracle.empty()) out << " via " << s.oracle;
      if (s.kind == Statement::Kind::AssertEq || s.kind == Statement::Kind::AssertInvolution)
        out << ", " << s.budget_used << " rewrites";
      out << "\n";
    }
    if ((!s.passed || verbose) && !s.homology.empty()) out << "       homology " << s.homology << "\n";
    if ((!s.passed || verbose) && !s.witness.empty()) out << "       witness " << s.witness << "\n";
    if (!s.message.empty()) out << "       " << s.message << "\n";
  }
  out << (r.passed() ? "PASS" : "FAIL") << ": " << r.assertions() << " assertions, " << r.failures() << " failed, "
      << std::fixed << std::setprecision(0) << r.millis << " ms\n";
  return out.str();
}

std::string format_json(const std::vector<ReplayReport>& reports) {
  using json = nlohmann::ordered_json;
  json root;
  auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream ts;
  ts << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  root["timestamp"] = ts.str();
  bool all = true;
  json arr = json::array();
  for (const auto& r : reports) {
    all = all && r.passed();
    json j;
    j["script"] = r.script;
    j["model"] = r.model;
    j["n"] = r.n ? json(*r.n) : json(nullptr);
    j["budget"] = r.budget;
    j["window"] = r.window;
    j["conventions_checksum"] = r.conventions_checksum;
    j["passed"] = r.passed();
    j["assertions"] = r.assertions();
    j["failures"] = r.failures();
    json stmts = json::array();
    for (const auto& s : r.results) {
      json o;
      o["index"] = s.index;
      o["line"] = s.line;
      o["tag"] = s.tag;
      o["kind"] = std::string(to_string(s.kind));
      o["statement"] = s.statement;
      o["verdict"] = s.verdict;
      o["oracle"] = s.oracle;
      o["budget_used"] = s.budget_used;
      o["witness"] = s.witness;
      o["homology"] = s.homology;
      o["message"] = s.message;
      o["passed"] = s.passed;
      stmts.push_back(std::move(o));
    }
    j["statements"] = std::move(stmts);
    j["proved_members"] = r.proved_members;
    arr.push_back(std::move(j));
  }
  root["passed"] = all;
  root["reports"] = std::move(arr);
  return root.dump(2) + "\n";
}

}  // namespace mcg
