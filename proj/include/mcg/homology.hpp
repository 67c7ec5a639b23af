#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mcg/word.hpp"

namespace mcg {

/// Sparse integer vector over a truncated basis, sorted by index.
using SparseVec = std::vector<std::pair<int, long long>>;

SparseVec unit_vector(int k);
SparseVec add_scaled(const SparseVec& x, long long s, const SparseVec& y);  // x + s*y

/// Classes a and b of every handle in the window, interleaved: basis index
/// 2k is a of handle k, 2k+1 is its b, with <a,b> = 1.
class TruncatedBasis {
 public:
  TruncatedBasis(ModelPtr model, int window);

  const ModelPtr& model() const { return model_; }
  int window() const { return window_; }
  int dim() const { return static_cast<int>(2 * handles_.size()); }
  const std::vector<HandleCoord>& handles() const { return handles_; }
  std::optional<int> handle_index(const HandleCoord& h) const;

  /// "a(1,3)" / "b(-2)" style name of a basis vector.
  std::string name(int k) const;
  std::string format(const SparseVec& v) const;

  long long pairing(int i, int j) const;
  long long pairing(const SparseVec& x, const SparseVec& y) const;
  /// <x, e_k> without materializing e_k.
  long long pairing_with_basis(const SparseVec& x, int k) const;

  /// Class of a label, or nullopt when it involves handles outside the window.
  std::optional<SparseVec> class_of(const CurveLabel& c) const;

 private:
  ModelPtr model_;
  int window_;
  std::vector<HandleCoord> handles_;
  std::map<HandleCoord, int> index_;
};

/// Square integer matrix stored as the identity plus the columns that
/// differ from it, with a mask of columns whose image is not trustworthy.
class IntMatrix {
 public:
  explicit IntMatrix(int dim = 0) : dim_(dim) {}

  int dim() const { return dim_; }
  SparseVec column(int k) const;
  bool valid(int k) const { return !invalid_.count(k); }
  void set_column(int k, SparseVec v);
  void invalidate(int k);

  const std::map<int, SparseVec>& changed() const { return changed_; }
  const std::set<int>& invalid() const { return invalid_; }
  std::size_t valid_count() const { return dim_ - invalid_.size(); }

  /// Image of a vector; nullopt if it touches an invalid column.
  std::optional<SparseVec> apply(const SparseVec& v) const;

  /// Product this * rhs (rhs acts first); masks compose.
  IntMatrix operator*(const IntMatrix& rhs) const;
  /// Equal on columns valid in both.
  bool agrees_with(const IntMatrix& other, int* first_difference = nullptr) const;
  bool is_identity_on_valid() const;

  /// Dense row-major grid, '*' marking invalid columns.
  std::string to_grid() const;

 private:
  int dim_;
  std::map<int, SparseVec> changed_;
  std::set<int> invalid_;
};

struct HomologyCheck {
  enum class Kind { Consistent, Refuted, Inconclusive };
  Kind kind = Kind::Inconclusive;
  std::string detail;    // separating vector and images, or reason
  std::size_t compared = 0;  // number of columns compared
};

std::string_view to_string(HomologyCheck::Kind k);

/// Action on first homology of a window of the surface.
/// Immutable; the symmetry matrices are built once at construction.
class HomologyOracle {
 public:
  HomologyOracle(ModelPtr model, int window);

  const TruncatedBasis& basis() const { return basis_; }

  IntMatrix twist_matrix(const CurveLabel& c, long long power = 1) const;
  IntMatrix symmetry_matrix(const std::string& name) const;
  IntMatrix shift_matrix(const ShiftLabel& h, int sign = 1) const;
  IntMatrix word_matrix(const Word& w) const;

  /// True iff M^T J M = J on the valid columns.
  bool preserves_pairing(const IntMatrix& m) const;

  HomologyCheck verify_identity(const Word& w1, const Word& w2) const;

 private:
  struct LetterMap {
    std::vector<std::optional<SparseVec>> image;  // per basis index
  };
  LetterMap label_map(const std::function<std::optional<CurveLabel>(const CurveLabel&)>& f) const;
  const LetterMap* symmetry_map(const std::string& primitive) const;
  LetterMap shift_map(const ShiftLabel& h, int sign) const;
  static IntMatrix to_matrix(const LetterMap& m, int dim);

  TruncatedBasis basis_;
  std::map<std::string, LetterMap> symmetries_;
};

/// Upper bound on how far a word moves handle indices: 2 plus the total
/// shift exponent plus the largest displacement of any prefix of its
/// line-model symmetry letters.
int displacement_bound(const Word& w);

/// Right-handed twist convention check on one handle pair and the braid
/// relation on an intersecting pair. Empty on success.
std::vector<std::string> transvection_self_test(const HomologyOracle& oracle);

struct SweepReport {
  std::size_t labels = 0;
  std::size_t pairs = 0;
  std::size_t commuting = 0;
  std::size_t braiding = 0;
  std::size_t homologous = 0;  // disjoint pairs with equal classes, whose twists act identically
  std::size_t generators = 0;  // matrices checked against the pairing
  std::vector<std::string> failures;
};

/// Every label pair in the window: the twist matrices commute iff the curves
/// are disjoint and satisfy the braid identity iff they meet once (pairs of
/// homologous curves excepted, counted apart). Every twist, symmetry and
/// shift matrix is checked against the pairing.
SweepReport relation_sweep(const HomologyOracle& oracle, int window);

HomologyCheck verify_identity_homology(const Word& w1, const Word& w2, int window);

}  // namespace mcg
