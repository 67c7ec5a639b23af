#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mcg/engine.hpp"
#include "mcg/int_expr.hpp"
#include "mcg/model.hpp"

namespace mcg {

/// Expression tree of the script language. Positions are not compared.
struct Expr {
  enum class Kind { Identity, Twist, Shift, Name, Product, Conj, Inv, Power };
  Kind kind = Kind::Identity;
  Family family = Family::A;    // Twist
  std::vector<IntExpr> indices;  // Twist, Shift
  std::string name;              // Name
  std::vector<Expr> args;        // Product: factors; Conj: (x, g); Inv, Power: one operand
  IntExpr exponent;              // Power
  SourcePos pos;

  friend bool operator==(const Expr& a, const Expr& b) {
    return a.kind == b.kind && a.family == b.family && a.indices == b.indices && a.name == b.name &&
           a.args == b.args && a.exponent == b.exponent;
  }
};

/// One entry of a cycle in ASSERT_PROJECTION: an index or `...`.
struct CycleEntry {
  bool ellipsis = false;
  IntExpr value;
  friend bool operator==(const CycleEntry&, const CycleEntry&) = default;
};

struct Statement {
  enum class Kind { Let, Gen, AssertEq, AssertInvolution, AssertProjection, AssertSymmetric, AssertGoalset };
  Kind kind = Kind::Let;
  std::string tag;   // optional `@tag`
  std::string name;  // Let, Gen
  // Let/Gen: the bound expression (Gen may have none); AssertEq: lhs, rhs;
  // AssertInvolution: rho, x; AssertProjection: the word; Symmetric/Goalset: members.
  std::vector<Expr> exprs;
  std::vector<std::vector<CycleEntry>> cycles;  // AssertProjection
  SourcePos pos;

  bool is_assertion() const { return kind != Kind::Let && kind != Kind::Gen; }
  friend bool is_assertion(Kind k) { return k != Kind::Let && k != Kind::Gen; }

  friend bool operator==(const Statement& a, const Statement& b) {
    return a.kind == b.kind && a.tag == b.tag && a.name == b.name && a.exprs == b.exprs && a.cycles == b.cycles;
  }
};

std::string_view to_string(Statement::Kind k);

struct ScriptHeader {
  std::string model;  // "sn", "jacob", "lochness"
  std::vector<std::pair<std::string, IntExpr>> params;
  std::vector<std::pair<std::string, std::string>> conventions;

  /// FNV-1a digest of the convention lines, as 16 hex digits.
  std::string conventions_checksum() const;

  friend bool operator==(const ScriptHeader&, const ScriptHeader&) = default;
};

struct ProofScript {
  ScriptHeader header;
  std::vector<Statement> statements;

  friend bool operator==(const ProofScript&, const ProofScript&) = default;
};

/// Parses script text. Names are checked against the model's symmetries and
/// earlier bindings. Throws ParseError, UndefinedName or Redefinition with a
/// position. `spec` overrides the model named in the MODEL line.
ProofScript parse_script(std::string_view text, const ModelSpec* spec = nullptr);

/// Canonical text; parse_script(print_script(s)) == s.
std::string print_script(const ProofScript& s);
std::string print_expr(const Expr& e);
std::string print_statement(const Statement& s);

/// Parses a standalone word over a model (no bindings), e.g. for the CLI.
Word parse_word(std::string_view text, const ModelPtr& model);

struct StatementResult {
  std::size_t index = 0;
  int line = 0;
  std::string tag;
  std::string statement;  // printed statement
  Statement::Kind kind = Statement::Kind::Let;
  std::string verdict;    // ProvedEqual, ProvedDistinct, Unknown, Yes, No, Error, or "-" for bindings
  std::string oracle;
  long long budget_used = 0;
  std::string witness;
  std::string homology;
  std::string message;
  bool passed = true;
  double millis = 0;
};

struct ReplayOptions {
  long long budget = kDefaultBudget;
  int window = kDefaultWindow;
  std::optional<int> n;  // overrides PARAM n
  ModelPtr model;        // overrides the builtin model (n still applies)
};

struct ReplayReport {
  std::string script;
  std::string model;
  std::optional<int> n;
  long long budget = 0;
  int window = 0;
  std::string conventions_checksum;
  std::vector<StatementResult> results;
  std::vector<std::string> proved_members;  // normal forms, in order of derivation
  double millis = 0;

  bool passed() const;
  std::size_t assertions() const;
  std::size_t failures() const;
};

/// Runs the statements in order; assertion failures are recorded and the
/// replay continues. Throws OutOfWindow when an assertion needs a larger
/// window than requested, and model errors as they arise.
ReplayReport replay(const ProofScript& script, const ReplayOptions& opt = {}, std::string script_name = "");

std::string format_text(const ReplayReport& r, bool verbose = false);
/// Stable JSON; only the `timestamp` field varies between identical runs.
std::string format_json(const std::vector<ReplayReport>& reports);

}  // namespace mcg
