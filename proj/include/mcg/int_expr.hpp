#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mcg/lexer.hpp"

namespace mcg {

/// Integer arithmetic over named parameters, used for curve indices in
/// model rules and proof scripts: `(n+1)/2+4`, `mod(j+1)`, `2-j`.
class IntExpr {
 public:
  enum class Op { Const, Var, Neg, Add, Sub, Mul, Div, Mod };

  static IntExpr constant(long long v);
  static IntExpr variable(std::string name);
  static IntExpr unary(Op op, IntExpr a);
  static IntExpr binary(Op op, IntExpr a, IntExpr b);

  using Lookup = std::function<std::optional<long long>(const std::string&)>;

  /// `modulus` is used by mod(): the result is reduced into 1..modulus.
  long long eval(const Lookup& lookup, std::optional<long long> modulus = std::nullopt) const;

  Op op() const { return op_; }
  long long value() const { return value_; }
  const std::string& name() const { return name_; }
  const std::vector<IntExpr>& args() const { return args_; }

  bool is_constant() const { return op_ == Op::Const; }
  bool is_variable() const { return op_ == Op::Var; }

  /// Canonical text; reparsing it yields an equal expression.
  std::string to_string() const;

  friend bool operator==(const IntExpr&, const IntExpr&) = default;

 private:
  Op op_ = Op::Const;
  long long value_ = 0;
  std::string name_;
  std::vector<IntExpr> args_;
};

/// sum := product (('+'|'-') product)*
IntExpr parse_int_expr(TokenStream& ts);
/// A single signed atom, as used after `^`: 4, -4, n, (n-1).
IntExpr parse_int_atom(TokenStream& ts);

/// Reduces v into the range 1..m.
long long reduce_mod(long long v, long long m);

}  // namespace mcg
