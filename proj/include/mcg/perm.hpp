#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mcg/word.hpp"

namespace mcg {

using BigInt = boost::multiprecision::cpp_int;

/// Permutation of {0..n-1}; printed 1-based in cycle notation.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(int n);  // identity
  /// Throws EvaluationError unless `images` is a bijection of 0..n-1.
  explicit Permutation(std::vector<int> images);

  int degree() const { return static_cast<int>(img_.size()); }
  int operator()(int i) const { return img_[i]; }
  const std::vector<int>& images() const { return img_; }

  /// Composition: (p * q)(i) = p(q(i)).
  Permutation operator*(const Permutation& q) const;
  Permutation inverse() const;
  Permutation pow(long long k) const;
  bool is_identity() const;
  std::vector<std::vector<int>> cycles() const;
  /// lcm of the cycle lengths.
  BigInt order() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> img_;
};

/// "(1 2 3)(4 5)"; the identity prints as "()".
std::string to_string(const Permutation& p);
/// Cycle notation over 1..n; throws ParseError.
Permutation parse_cycles(std::string_view text, int n);
/// The n-cycle (1 2 ... n).
Permutation rotation(int n);

/// Image in Sym_n of a word on an S(n) model. Twists and shifts map to the
/// identity. Throws WrongModel on models without ends.
Permutation project(const Word& w);

/// Base and strong generating set built by deterministic Schreier-Sims.
class StabilizerChain {
 public:
  StabilizerChain(int n, const std::vector<Permutation>& gens);

  BigInt order() const;
  bool contains(const Permutation& g) const;
  const std::vector<int>& base() const { return base_; }
  std::vector<std::size_t> orbit_sizes() const;

 private:
  struct Level {
    std::vector<Permutation> gens;
    std::vector<int> orbit;
    std::vector<std::optional<Permutation>> transversal;  // u with u(base) = point
  };
  void rebuild_orbit(std::size_t i);
  // Residue of g after sifting from level `from`, with the level where it stopped.
  std::pair<Permutation, std::size_t> strip(Permutation g, std::size_t from) const;

  int n_;
  std::vector<int> base_;
  std::vector<Level> levels_;
};

BigInt group_order(const std::vector<Permutation>& gens);

struct SymmetricCertificate {
  bool full = false;
  BigInt order;
};

/// full iff the generated group has order n!.
SymmetricCertificate certify_full_symmetric(const std::vector<Permutation>& gens, int n);

BigInt factorial(int n);

}  // namespace mcg
