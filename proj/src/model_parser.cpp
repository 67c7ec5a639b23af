#include <sstream>

#include "mcg/model.hpp"

namespace mcg {

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Sn: return "sn";
    case ModelKind::Jacob: return "jacob";
    case ModelKind::LochNess: return "lochness";
  }
  return "?";
}

namespace {

Family parse_family(TokenStream& ts) {
  Token t = ts.expect_ident();
  auto f = family_from_name(t.text);
  if (!f) ts.fail_at(t, "unknown curve family '" + t.text + "'");
  return *f;
}

LabelPattern parse_pattern(TokenStream& ts) {
  LabelPattern p;
  p.family = parse_family(ts);
  ts.expect("[");
  do {
    SlotPattern s;
    if (ts.peek().kind == TokenKind::Ident) {
      s.var = ts.next().text;
    } else {
      s.literal = true;
      s.value = ts.expect_int();
    }
    p.slots.push_back(std::move(s));
  } while (ts.accept(","));
  ts.expect("]");
  return p;
}

std::optional<LabelImage> parse_image(TokenStream& ts) {
  if (ts.accept("?")) return std::nullopt;
  LabelImage img;
  img.family = parse_family(ts);
  ts.expect("[");
  do {
    img.slots.push_back(parse_int_expr(ts));
  } while (ts.accept(","));
  ts.expect("]");
  return img;
}

std::vector<Condition> parse_conditions(TokenStream& ts) {
  std::vector<Condition> out;
  if (!ts.accept("if")) return out;
  do {
    Condition c;
    c.lhs = parse_int_expr(ts);
    Token op = ts.next();
    static const char* ops[] = {"==", "!=", "<", "<=", ">", ">="};
    bool ok = false;
    for (auto o : ops) ok = ok || op.text == o;
    if (!ok) ts.fail_at(op, "expected comparison operator");
    c.op = op.text;
    c.rhs = parse_int_expr(ts);
    out.push_back(std::move(c));
  } while (ts.accept("and"));
  return out;
}

ClassTerm parse_class_term(TokenStream& ts, long long sign) {
  ClassTerm term;
  term.coeff = sign;
  if (ts.peek().kind == TokenKind::Int) {
    term.coeff *= ts.expect_int();
    ts.expect("*");
  }
  Token kind = ts.expect_ident();
  if (kind.text != "a" && kind.text != "b") ts.fail_at(kind, "expected handle class a(...) or b(...)");
  term.beta = kind.text == "b";
  ts.expect("(");
  do {
    term.handle.push_back(parse_int_expr(ts));
  } while (ts.accept(","));
  ts.expect(")");
  return term;
}

void expect_end_of_line(TokenStream& ts) {
  if (!ts.at_end()) ts.fail("unexpected '" + ts.peek().text + "'");
}

RewriteRule parse_rewrite(TokenStream& ts) {
  RewriteRule r;
  r.pos = ts.peek().pos;
  r.lhs = parse_pattern(ts);
  ts.expect("->");
  r.rhs = parse_image(ts);
  r.conditions = parse_conditions(ts);
  expect_end_of_line(ts);
  return r;
}

}  // namespace

ModelSpec parse_model(std::string_view text, std::string source_name) {
  ModelSpec spec;
  spec.source_name = std::move(source_name);
  bool have_kind = false;

  enum class Block { None, Symmetry, Shift } block = Block::None;
  SymmetryDef current_sym;
  ShiftDef current_shift;

  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = tokenize_line(line, line_no);
    if (tokens.empty()) continue;
    TokenStream ts(std::move(tokens), line_no, ErrorCode::ModelError);
    const Token head = ts.peek();

    if (block != Block::None) {
      if (head.text == "end") {
        ts.next();
        expect_end_of_line(ts);
        if (block == Block::Symmetry) {
          spec.symmetries.push_back(std::move(current_sym));
          current_sym = {};
        } else {
          spec.shift = std::move(current_shift);
          current_shift = {};
        }
        block = Block::None;
        continue;
      }
      if (block == Block::Symmetry && head.text == "ends") {
        ts.next();
        if (ts.peek().text == "(") {
          while (ts.accept("(")) {
            std::vector<IntExpr> cycle;
            while (!ts.accept(")")) cycle.push_back(parse_int_expr(ts));
            current_sym.end_cycles.push_back(std::move(cycle));
          }
        } else {
          std::string var = ts.expect_ident().text;
          ts.expect("->");
          current_sym.end_map = std::pair{var, parse_int_expr(ts)};
        }
        expect_end_of_line(ts);
        continue;
      }
      RewriteRule r = parse_rewrite(ts);
      (block == Block::Symmetry ? current_sym.rules : current_shift.rules).push_back(std::move(r));
      continue;
    }

    std::string word = ts.expect_ident().text;
    if (word == "kind") {
      Token k = ts.expect_ident();
      if (k.text == "sn") spec.kind = ModelKind::Sn;
      else if (k.text == "jacob") spec.kind = ModelKind::Jacob;
      else if (k.text == "lochness") spec.kind = ModelKind::LochNess;
      else ts.fail_at(k, "unknown model kind '" + k.text + "'");
      have_kind = true;
    } else if (word == "param") {
      Token p = ts.expect_ident();
      if (p.text != "n") ts.fail_at(p, "only the parameter n is supported");
      ts.expect(">=");
      spec.min_n = ts.expect_int();
    } else if (word == "family") {
      Family f = parse_family(ts);
      FamilyDomain d;
      if (ts.accept(">=")) {
        d.kind = DomainKind::AtLeast;
        d.min = ts.expect_int();
      } else if (ts.accept("nonzero")) {
        d.kind = DomainKind::NonZero;
      } else if (ts.accept("any")) {
        d.kind = DomainKind::Any;
      } else {
        ts.fail("expected '>= k', 'nonzero' or 'any'");
      }
      spec.families[f] = d;
    } else if (word == "class") {
      ClassRule r;
      r.lhs = parse_pattern(ts);
      ts.expect("=");
      long long sign = ts.accept("-") ? -1 : 1;
      r.terms.push_back(parse_class_term(ts, sign));
      for (;;) {
        if (ts.accept("+")) r.terms.push_back(parse_class_term(ts, 1));
        else if (ts.accept("-")) r.terms.push_back(parse_class_term(ts, -1));
        else break;
      }
      r.conditions = parse_conditions(ts);
      spec.classes.push_back(std::move(r));
    } else if (word == "meet") {
      RewriteRule r;
      r.pos = ts.peek().pos;
      r.lhs = parse_pattern(ts);
      ts.expect("~");
      r.rhs = parse_image(ts);
      if (!r.rhs) ts.fail("a meet rule needs a concrete partner label");
      r.conditions = parse_conditions(ts);
      spec.meets.push_back(std::move(r));
    } else if (word == "symmetry") {
      current_sym.name = ts.expect_ident().text;
      block = Block::Symmetry;
    } else if (word == "shift") {
      current_shift.name = ts.expect_ident().text;
      ts.expect("[");
      current_shift.from_var = ts.expect_ident().text;
      ts.expect(",");
      current_shift.to_var = ts.expect_ident().text;
      ts.expect("]");
      block = Block::Shift;
    } else if (word == "alias") {
      AliasDef a;
      a.name = ts.expect_ident().text;
      ts.expect("=");
      while (!ts.at_end()) {
        std::string f = ts.expect_ident().text;
        int e = 1;
        if (ts.accept("^")) e = static_cast<int>(ts.expect_int());
        a.factors.emplace_back(f, e);
      }
      if (a.factors.empty()) ts.fail("empty alias");
      spec.aliases.push_back(std::move(a));
    } else if (word == "dihedral") {
      std::string s1 = ts.expect_ident().text;
      std::string s2 = ts.expect_ident().text;
      spec.dihedral = std::pair{s1, s2};
      ts.expect("order");
      if (!ts.accept("inf")) spec.dihedral_order = parse_int_expr(ts);
    } else if (word == "order") {
      std::string name = ts.expect_ident().text;
      spec.orders.emplace_back(name, parse_int_expr(ts));
    } else {
      ts.fail_at(head, "unknown model directive '" + word + "'");
    }
    expect_end_of_line(ts);
  }
  if (block != Block::None) {
    throw Error(ErrorCode::ModelError, "unterminated block (missing 'end')", {line_no, 1});
  }
  if (!have_kind) throw Error(ErrorCode::ModelError, "missing 'kind' directive", {1, 1});
  return spec;
}

}  // namespace mcg
