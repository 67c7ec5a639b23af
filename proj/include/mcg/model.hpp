#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mcg/error.hpp"
#include "mcg/int_expr.hpp"
#include "mcg/labels.hpp"

namespace mcg {

enum class ModelKind { Sn, Jacob, LochNess };

std::string_view to_string(ModelKind kind);

// Rule data as read from a .model file.

struct SlotPattern {
  bool literal = false;
  long long value = 0;
  std::string var;
};

struct LabelPattern {
  Family family = Family::A;
  std::vector<SlotPattern> slots;
};

struct LabelImage {
  Family family = Family::A;
  std::vector<IntExpr> slots;
};

struct Condition {
  IntExpr lhs;
  std::string op;
  IntExpr rhs;
};

/// `pattern -> image [if ...]`; an absent image (`?`) marks a label that is
/// moved to a curve outside the standard system.
struct RewriteRule {
  LabelPattern lhs;
  std::optional<LabelImage> rhs;
  std::vector<Condition> conditions;
  SourcePos pos;
};

struct ClassTerm {
  long long coeff = 1;
  bool beta = false;
  std::vector<IntExpr> handle;
};

struct ClassRule {
  LabelPattern lhs;
  std::vector<ClassTerm> terms;
  std::vector<Condition> conditions;
};

struct SymmetryDef {
  std::string name;
  std::vector<RewriteRule> rules;
  // Action on ends (S(n) only): either an affine map `ends j -> 2-j` or a
  // list of cycles `ends (1 2)`.
  std::optional<std::pair<std::string, IntExpr>> end_map;
  std::vector<std::vector<IntExpr>> end_cycles;
};

struct ShiftDef {
  std::string name;
  std::string from_var;
  std::string to_var;
  std::vector<RewriteRule> rules;
};

struct AliasDef {
  std::string name;
  std::vector<std::pair<std::string, int>> factors;  // primitive symmetries, left to right
};

enum class DomainKind { AtLeast, NonZero, Any };

struct FamilyDomain {
  DomainKind kind = DomainKind::Any;
  long long min = 0;
};

/// Unparsed model description; instantiate with `SurfaceModel`.
struct ModelSpec {
  ModelKind kind = ModelKind::Sn;
  std::string source_name;
  std::optional<long long> min_n;
  std::map<Family, FamilyDomain> families;
  std::vector<ClassRule> classes;
  std::vector<RewriteRule> meets;
  std::vector<SymmetryDef> symmetries;
  std::optional<ShiftDef> shift;
  std::vector<AliasDef> aliases;
  std::optional<std::pair<std::string, std::string>> dihedral;
  std::optional<IntExpr> dihedral_order;  // absent = infinite
  std::vector<std::pair<std::string, IntExpr>> orders;
};

/// Parses the line-oriented model format; errors carry line and column.
ModelSpec parse_model(std::string_view text, std::string source_name = "<model>");

/// Text of a shipped model: "sn", "jacob" or "lochness".
std::string_view builtin_model_text(std::string_view kind);

/// Outcome of a handle shift acting on a curve label.
struct ShiftAction {
  enum class Kind { Fixed, Moved, Undefined };
  Kind kind = Kind::Fixed;
  CurveLabel image;
};

/// One homology handle: its coordinates ((i,j) on S(n), (p) on a line).
using HandleCoord = std::vector<long long>;

struct ClassComponent {
  HandleCoord handle;
  bool beta = false;
  long long coeff = 0;
};

/// An instantiated surface model. Immutable after construction.
class SurfaceModel {
 public:
  SurfaceModel(ModelSpec spec, std::optional<int> n = std::nullopt);

  ModelKind kind() const { return spec_.kind; }
  std::optional<int> n() const { return n_; }
  bool has_ends() const { return spec_.kind == ModelKind::Sn; }
  std::string description() const;
  const ModelSpec& spec() const { return spec_; }

  /// Throws InvalidLabel when the label violates the model's index ranges.
  void check_label(const CurveLabel& c) const;
  bool valid_label(const CurveLabel& c) const;
  void check_shift(const ShiftLabel& h) const;
  /// Reduces the end index into 1..n on S(n); identity elsewhere.
  CurveLabel canonical(CurveLabel c) const;

  int intersection_number(const CurveLabel& c1, const CurveLabel& c2) const;
  /// Labels that a meet rule pairs with `c` when `c` is on the rule's left.
  std::vector<CurveLabel> meet_partners(const CurveLabel& c) const;

  bool is_symmetry(const std::string& name) const;
  bool is_primitive_symmetry(const std::string& name) const;
  bool is_alias(const std::string& name) const;
  /// Primitive factors (left to right) of a symmetry name; primitives expand to themselves.
  std::vector<std::pair<std::string, int>> expand_symmetry(const std::string& name) const;
  bool has_label_action(const std::string& primitive) const;
  std::vector<std::string> primitive_symmetries() const;
  std::vector<std::string> alias_names() const;

  /// Image of a label under a symmetry (aliases are expanded and composed).
  CurveLabel apply_symmetry(const std::string& name, const CurveLabel& c) const;
  std::optional<CurveLabel> try_apply_symmetry(const std::string& primitive, const CurveLabel& c) const;
  /// Image of a handle shift under a symmetry: h_{p,q} -> (h_{s p, s q} in canonical orientation, sign).
  std::pair<ShiftLabel, int> apply_symmetry_shift(const std::string& name, const ShiftLabel& h) const;

  /// Handle shift h (or its inverse when exponent_sign < 0) acting on a label.
  ShiftAction apply_shift(const ShiftLabel& h, int exponent_sign, const CurveLabel& c) const;
  bool has_shifts() const { return spec_.shift.has_value(); }
  /// Shifts are stored with from < to; h_{q,p} is the inverse of h_{p,q}.
  std::pair<ShiftLabel, int> canonical_shift(const ShiftLabel& h) const;
  /// Two shifts commute syntactically when their end pairs are disjoint.
  bool shifts_disjoint(const ShiftLabel& a, const ShiftLabel& b) const;

  /// End permutation (0-based images of ends 1..n) of a primitive symmetry.
  std::optional<std::vector<int>> end_permutation(const std::string& primitive) const;

  const std::optional<std::pair<std::string, std::string>>& dihedral() const { return spec_.dihedral; }
  /// Order of the rotation s1 s2 of the dihedral pair; nullopt when infinite.
  std::optional<long long> dihedral_order() const { return dihedral_order_; }
  const std::vector<std::pair<std::string, long long>>& declared_orders() const { return orders_; }
  std::optional<long long> declared_order(const std::string& name) const;

  /// Homology class of a label as integer combination of handle classes.
  std::vector<ClassComponent> homology_class(const CurveLabel& c) const;
  /// Handles retained by a window of W genus positions per strand.
  std::vector<HandleCoord> handles(int window) const;
  bool handle_in_window(const HandleCoord& h, int window) const;
  /// Standard a/b labels that carry the classes of a handle.
  CurveLabel alpha_label(const HandleCoord& h) const;
  CurveLabel beta_label(const HandleCoord& h) const;

  /// Every standard label whose indices lie in the window.
  std::vector<CurveLabel> labels_in_window(int window) const;

 private:
  using Env = std::map<std::string, long long>;

  std::vector<long long> coords(const CurveLabel& c) const;
  CurveLabel from_coords(Family f, const std::vector<long long>& coords) const;
  bool match(const LabelPattern& p, const CurveLabel& c, Env& env) const;
  bool conditions_hold(const std::vector<Condition>& conds, const Env& env) const;
  long long eval(const IntExpr& e, const Env& env) const;
  CurveLabel build(const LabelImage& img, const Env& env) const;
  std::optional<std::optional<CurveLabel>> apply_rules(const std::vector<RewriteRule>& rules,
                                                       const CurveLabel& c, Env env) const;
  const SymmetryDef* find_symmetry(const std::string& name) const;
  const AliasDef* find_alias(const std::string& name) const;
  int map_end(const std::string& primitive, int end) const;

  ModelSpec spec_;
  std::optional<int> n_;
  std::optional<long long> dihedral_order_;
  std::vector<std::pair<std::string, long long>> orders_;
};

using ModelPtr = std::shared_ptr<const SurfaceModel>;

/// Builds a shipped model; `n` is required for "sn" and ignored otherwise.
ModelPtr make_builtin_model(std::string_view kind, std::optional<int> n = std::nullopt);
/// Builds a model from model-file text.
ModelPtr make_model(std::string_view text, std::optional<int> n, std::string source_name = "<model>");

struct ValidationFinding {
  std::string kind;  // "symmetry", "range", "equivariance", "order", "shift"
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationFinding> findings;
  std::size_t labels_checked = 0;
  std::size_t pairs_checked = 0;
  bool clean() const { return findings.empty(); }
};

/// Exhaustive consistency sweep over all labels with indices in the window:
/// symmetric 0/1 intersection data, equivariance of every symmetry with a
/// label action, declared orders, and shift/symmetry compatibility.
ValidationReport validate_model(const SurfaceModel& model, int window);

}  // namespace mcg
