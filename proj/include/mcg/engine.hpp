#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mcg/word.hpp"

namespace mcg {

class HomologyOracle;

inline constexpr long long kDefaultBudget = 100000;
inline constexpr int kDefaultWindow = 40;

/// Default budget, overridden by the MCG_BUDGET environment variable when set.
long long default_budget();

/// Image of a standard curve under a word, or nullopt once it leaves the
/// standard label set (or meets a symmetry without a label action).
std::optional<CurveLabel> curve_image(const Word& g, const CurveLabel& c);

/// g w g~, simplified letter by letter where images stay standard.
Word conjugate(const Word& w, const Word& g);

/// Moves symmetry letters to the right end, relabeling what they pass.
/// A symmetry without a label action stays where it is.
Word push_symmetries(const Word& w);

struct NormalizeResult {
  Word word;
  bool complete = true;  // false: budget ran out first
  long long rewrites = 0;
  std::vector<std::string> trace;
};

/// Rewrites: free reduction, symmetry and shift pushing, commutation sorting,
/// conjugation collapse, then a braid-move search for shorter words.
NormalizeResult normalize(const Word& w, long long budget);
/// Same without the braid search.
NormalizeResult normalize_cheap(const Word& w, long long budget);

struct Verdict {
  enum class Kind { ProvedEqual, ProvedDistinct, Unknown };
  Kind kind = Kind::Unknown;
  std::string oracle;   // "rewrite", "homology", "projection" or "budget"
  std::string witness;  // residual word, separating vector or permutation pair
  std::vector<std::string> trace;
  long long budget_used = 0;
  std::string homology;  // cross-check: "consistent", "refuted: ..." or "inconclusive: ..."

  bool equal() const { return kind == Kind::ProvedEqual; }
};

std::string_view to_string(Verdict::Kind k);

struct EquivalenceOptions {
  long long budget = kDefaultBudget;
  int window = kDefaultWindow;
  /// Reused when it matches the model and window; built on demand otherwise.
  std::shared_ptr<const HomologyOracle> oracle;
};

Verdict equivalent(const Word& w1, const Word& w2, const EquivalenceOptions& opt = {});

/// Involution test for rho x: rho^2 = 1 is required first (NotAnInvolution
/// otherwise), then rho x rho = x~ certifies (rho x)^2 = 1.
Verdict check_involution(const Word& rho, const Word& x, const EquivalenceOptions& opt = {});

/// Lazily-computed twist commutation used by the rewriting passes.
bool letters_commute(const SurfaceModel& m, const Generator& x, const Generator& y);

}  // namespace mcg
