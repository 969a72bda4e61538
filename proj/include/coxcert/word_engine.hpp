#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coxcert/coxeter.hpp"
#include "coxcert/exact_matrix.hpp"

namespace coxcert {

// A word in the generators, by index.  Not assumed reduced.
struct Word {
  std::vector<int> letters;

  static Word parse(const CoxeterSystem& sys, std::string_view text);
  std::string to_labels(const CoxeterSystem& sys) const;
  void validate(int rank) const;
  friend bool operator==(const Word&, const Word&) = default;
};

// A reduced word in ShortLex normal form (greedy smallest left descent,
// which is also the lexicographically least reduced word of its element).
struct NormalForm {
  std::vector<int> letters;

  int length() const { return static_cast<int>(letters.size()); }
  Word word() const { return Word{letters}; }
  friend bool operator==(const NormalForm&, const NormalForm&) = default;
  friend std::strong_ordering operator<=>(const NormalForm&, const NormalForm&) = default;
};

// Multiplication table of a finite standard parabolic subgroup, produced by
// Cayley graph search.  Elements are sorted by (length, lex) on their
// normal forms, so the identity is element 0 and the longest element last.
struct ElementTable {
  Subset generators;                    // the sub-alphabet
  std::vector<NormalForm> elements;
  // edges[id][i] = id of (element * generators.members()[i])
  std::vector<std::vector<std::uint32_t>> edges;
  std::map<std::vector<int>, std::uint32_t> index;  // normal form -> id

  std::size_t size() const { return elements.size(); }
  std::uint32_t multiply(std::uint32_t id, int generator) const;
  std::uint32_t apply_word(std::uint32_t id, const Word& w) const;
  std::optional<std::uint32_t> find(const std::vector<int>& normal_form) const;
};

inline constexpr std::size_t kOracleLengthCap = 25;
inline constexpr std::uint64_t kCayleyElementCap = 100000;

// Word problem solver for one Coxeter system, backed by the geometric
// representation over the real cyclotomic field: a generator s is a left
// descent of w exactly when w^-1 maps alpha_s to a negative root, which the
// engine reads off matrices of w and w^-1 maintained incrementally.
class WordEngine {
 public:
  explicit WordEngine(CoxeterSystem sys);

  const CoxeterSystem& system() const { return sys_; }

  bool is_left_descent(const Word& w, int s) const;
  bool is_right_descent(const Word& w, int s) const;
  bool is_identity(const Word& w) const;
  int length(const Word& w) const;
  NormalForm shortlex_normal_form(const Word& w) const;

  // Independent reduction oracle: braid-move closure plus deletion of equal
  // adjacent pairs, no matrices involved.  Returns the lexicographically
  // least member of the final closure, which equals the ShortLex form by
  // the word property.  Throws CapExceeded when |w| exceeds length_cap.
  NormalForm tits_reduce_oracle(const Word& w,
                                std::size_t length_cap = kOracleLengthCap) const;

  // Breadth-first enumeration of the parabolic subgroup generated by t.
  // Throws CapExceeded when more than cap elements appear (in particular
  // whenever the subgroup is infinite).
  ElementTable cayley_enumerate(const Subset& t,
                                std::uint64_t cap = kCayleyElementCap) const;

  // Longest element of a spherical subset, as its ShortLex normal form.
  Word longest_element(const Subset& t) const;
  bool is_longest_element_central(const Subset& t) const;

  // |Z(W_t)| for spherical t: each irreducible factor contributes 2 when
  // its longest element is central, else 1.
  GroupOrder center_order(const Subset& t) const;

 private:
  struct Cursor;  // incremental matrices of w and w^-1
  CoxeterSystem sys_;
  std::shared_ptr<const CyclotomicField> field_;
  std::vector<ExactMatrix> reflections_;
  ExactMatrix identity_;
};

}  // namespace coxcert
