#pragma once

#include <compare>
#include <string>
#include <vector>

#include "mcg/model.hpp"

namespace mcg {

enum class GenKind { Twist, Shift, Symmetry };

/// One signed letter: a Dehn twist, a handle shift or a named symmetry,
/// raised to a nonzero exponent.
struct Generator {
  GenKind kind = GenKind::Twist;
  CurveLabel curve;
  ShiftLabel shift;
  std::string symmetry;
  int exponent = 1;

  static Generator twist(CurveLabel c, int e = 1);
  /// Shifts are stored with from < to; h[q,p] becomes h[p,q] with negated exponent.
  static Generator handle_shift(ShiftLabel h, int e = 1);
  static Generator sym(std::string name, int e = 1);

  bool same_base(const Generator& o) const;
  Generator inverse() const;

  friend bool operator==(const Generator&, const Generator&) = default;
};

/// Order on generator bases: twists (by label order), then shifts, then symmetries.
std::strong_ordering base_order(const Generator& x, const Generator& y);
/// Full letter order: base first, exponent as tie-break.
std::strong_ordering letter_order(const Generator& x, const Generator& y);

std::string to_string(const Generator& g);

/// A word in the generators, read as a composition: `f g` applies g first.
class Word {
 public:
  Word() = default;
  explicit Word(ModelPtr model, std::vector<Generator> letters = {});

  const ModelPtr& model() const { return model_; }
  const std::vector<Generator>& letters() const { return letters_; }
  std::vector<Generator>& letters() { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  /// Concatenation (this first in reading order, i.e. applied last).
  Word operator*(const Word& rhs) const;
  Word& operator*=(const Word& rhs);

  friend bool operator==(const Word& a, const Word& b) { return a.letters_ == b.letters_; }

 private:
  ModelPtr model_;
  std::vector<Generator> letters_;
};

/// Throws ModelMismatch when the words belong to different models.
void require_same_model(const Word& a, const Word& b);

Word invert(const Word& w);
/// Merges adjacent letters with equal base; drops zero exponents.
Word free_reduce(const Word& w);
Word power(const Word& w, long long k);
/// Word syntax shared with proof scripts; the empty word prints as `1`.
std::string to_string(const Word& w);

/// Element rho^k s1^r of the dihedral group generated by the model's
/// reflection pair (s1, s2), rho = s1 s2.
struct DihedralElement {
  long long k = 0;
  int r = 0;
};

/// nullopt unless every letter is one of the model's dihedral pair.
std::optional<DihedralElement> dihedral_element(const SurfaceModel& m, const std::vector<Generator>& run);
/// Shortest spelling; ties prefer nonnegative k.
std::vector<Generator> dihedral_word(const SurfaceModel& m, DihedralElement e);
/// Canonical form of a block of symmetry letters: dihedral runs are respelled
/// and powers of the other symmetries are reduced by their declared order.
std::vector<Generator> reduce_symmetry_letters(const SurfaceModel& m, std::vector<Generator> letters);

}  // namespace mcg
