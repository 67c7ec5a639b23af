#include "mcg/int_expr.hpp"

namespace mcg {

IntExpr IntExpr::constant(long long v) {
  IntExpr e;
  e.op_ = Op::Const;
  e.value_ = v;
  return e;
}

IntExpr IntExpr::variable(std::string name) {
  IntExpr e;
  e.op_ = Op::Var;
  e.name_ = std::move(name);
  return e;
}

IntExpr IntExpr::unary(Op op, IntExpr a) {
  IntExpr e;
  e.op_ = op;
  e.args_.push_back(std::move(a));
  return e;
}

IntExpr IntExpr::binary(Op op, IntExpr a, IntExpr b) {
  IntExpr e;
  e.op_ = op;
  e.args_.push_back(std::move(a));
  e.args_.push_back(std::move(b));
  return e;
}

long long reduce_mod(long long v, long long m) {
  long long r = ((v - 1) % m + m) % m;
  return r + 1;
}

long long IntExpr::eval(const Lookup& lookup, std::optional<long long> modulus) const {
  switch (op_) {
    case Op::Const: return value_;
    case Op::Var: {
      auto v = lookup(name_);
      if (!v) throw Error(ErrorCode::EvaluationError, "unbound index variable '" + name_ + "'");
      return *v;
    }
    case Op::Neg: return -args_[0].eval(lookup, modulus);
    case Op::Add: return args_[0].eval(lookup, modulus) + args_[1].eval(lookup, modulus);
    case Op::Sub: return args_[0].eval(lookup, modulus) - args_[1].eval(lookup, modulus);
    case Op::Mul: return args_[0].eval(lookup, modulus) * args_[1].eval(lookup, modulus);
    case Op::Div: {
      long long d = args_[1].eval(lookup, modulus);
      if (d == 0) throw Error(ErrorCode::EvaluationError, "division by zero in index expression");
      return args_[0].eval(lookup, modulus) / d;
    }
    case Op::Mod: {
      if (!modulus) throw Error(ErrorCode::EvaluationError, "mod() used without a modulus");
      return reduce_mod(args_[0].eval(lookup, modulus), *modulus);
    }
  }
  return 0;
}

namespace {

int precedence(IntExpr::Op op) {
  switch (op) {
    case IntExpr::Op::Add:
    case IntExpr::Op::Sub: return 1;
    case IntExpr::Op::Mul:
    case IntExpr::Op::Div: return 2;
    case IntExpr::Op::Neg: return 3;
    default: return 4;
  }
}

std::string wrap(const IntExpr& e, int min_prec) {
  std::string s = e.to_string();
  return precedence(e.op()) < min_prec ? "(" + s + ")" : s;
}

}  // namespace

std::string IntExpr::to_string() const {
  switch (op_) {
    case Op::Const: return value_ < 0 ? "(" + std::to_string(value_) + ")" : std::to_string(value_);
    case Op::Var: return name_;
    case Op::Neg: return "-" + wrap(args_[0], 4);
    case Op::Add: return wrap(args_[0], 1) + "+" + wrap(args_[1], 2);
    case Op::Sub: return wrap(args_[0], 1) + "-" + wrap(args_[1], 2);
    case Op::Mul: return wrap(args_[0], 2) + "*" + wrap(args_[1], 3);
    case Op::Div: return wrap(args_[0], 2) + "/" + wrap(args_[1], 3);
    case Op::Mod: return "mod(" + args_[0].to_string() + ")";
  }
  return "";
}

namespace {

IntExpr parse_product(TokenStream& ts);

IntExpr parse_primary(TokenStream& ts) {
  const Token& t = ts.peek();
  if (t.kind == TokenKind::Int) return IntExpr::constant(std::stoll(ts.next().text));
  if (t.kind == TokenKind::Ident) {
    if (t.text == "mod" && ts.peek(1).text == "(") {
      ts.next();
      ts.expect("(");
      IntExpr inner = parse_int_expr(ts);
      ts.expect(")");
      return IntExpr::unary(IntExpr::Op::Mod, std::move(inner));
    }
    return IntExpr::variable(ts.next().text);
  }
  if (ts.accept("(")) {
    IntExpr inner = parse_int_expr(ts);
    ts.expect(")");
    return inner;
  }
  ts.fail(t.kind == TokenKind::End ? "expected index expression before end of line"
                                   : "expected index expression, found '" + t.text + "'");
}

IntExpr parse_unary(TokenStream& ts) {
  if (ts.accept("-")) {
    IntExpr a = parse_unary(ts);
    if (a.is_constant()) return IntExpr::constant(-a.value());
    return IntExpr::unary(IntExpr::Op::Neg, std::move(a));
  }
  return parse_primary(ts);
}

IntExpr parse_product(TokenStream& ts) {
  IntExpr lhs = parse_unary(ts);
  for (;;) {
    if (ts.accept("*")) {
      lhs = IntExpr::binary(IntExpr::Op::Mul, std::move(lhs), parse_unary(ts));
    } else if (ts.accept("/")) {
      lhs = IntExpr::binary(IntExpr::Op::Div, std::move(lhs), parse_unary(ts));
    } else {
      return lhs;
    }
  }
}

}  // namespace

IntExpr parse_int_expr(TokenStream& ts) {
  IntExpr lhs = parse_product(ts);
  for (;;) {
    if (ts.accept("+")) {
      lhs = IntExpr::binary(IntExpr::Op::Add, std::move(lhs), parse_product(ts));
    } else if (ts.accept("-")) {
      lhs = IntExpr::binary(IntExpr::Op::Sub, std::move(lhs), parse_product(ts));
    } else {
      return lhs;
    }
  }
}

IntExpr parse_int_atom(TokenStream& ts) { return parse_unary(ts); }

}  // namespace mcg
