#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace coxcert {

// Order m(s,t) of a product of two generators: an integer >= 2, or infinity.
// (The diagonal m(s,s) = 1 is never stored in a CoxOrder off the diagonal.)
class CoxOrder {
 public:
  static constexpr CoxOrder infinity() { return CoxOrder(kInf); }
  static CoxOrder finite(std::uint32_t m);
  static constexpr CoxOrder one() { return CoxOrder(1); }

  constexpr bool is_finite() const { return raw_ != kInf; }
  constexpr bool is_infinite() const { return raw_ == kInf; }
  std::uint32_t value() const;  // throws InvalidArgument when infinite

  friend constexpr bool operator==(CoxOrder a, CoxOrder b) = default;

 private:
  explicit constexpr CoxOrder(std::uint32_t raw) : raw_(raw) {}
  static constexpr std::uint32_t kInf = 0xffffffffu;
  std::uint32_t raw_ = 1;
};

// Subset of generator indices, kept strictly increasing.  Comparison is
// lexicographic on the index sequence, so {} < {0} < {0,1} < {0,2} < {1}.
class Subset {
 public:
  Subset() = default;
  Subset(std::vector<int> members, int rank);  // validates against rank
  static Subset full(int rank);
  static Subset parse(std::string_view text, int rank);  // comma-separated

  int size() const { return static_cast<int>(members_.size()); }
  bool empty() const { return members_.empty(); }
  bool contains(int s) const;
  const std::vector<int>& members() const { return members_; }
  Subset with(int s) const;     // this union {s}; s must not be a member
  Subset without(int s) const;  // this minus {s}; s must be a member
  bool is_subset_of(const Subset& other) const;
  void validate(int rank) const;
  std::string to_string(const std::vector<std::string>& labels) const;

  friend bool operator==(const Subset&, const Subset&) = default;
  friend std::strong_ordering operator<=>(const Subset& a, const Subset& b) {
    return a.members_ <=> b.members_;
  }

 private:
  std::vector<int> members_;
};

// A finitely generated Coxeter system: symmetric matrix of orders plus
// generator labels.  Immutable after construction.
class CoxeterSystem {
 public:
  CoxeterSystem(std::vector<std::vector<CoxOrder>> orders,
                std::vector<std::string> labels = {});

  int rank() const { return static_cast<int>(orders_.size()); }
  CoxOrder order(int s, int t) const;
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int s) const;
  int label_index(std::string_view label) const;  // -1 when absent

  // Smallest N, a multiple of 4, such that every cos(pi/m(s,t)) with m(s,t)
  // finite lies in the real subfield of the N-th cyclotomic field.
  unsigned cyclotomic_order() const { return cyclo_order_; }

  // Round-trippable text form; infinity is written as 0.  Used verbatim as
  // the fingerprint preimage, so its bytes are part of the certificate
  // format and must never change.
  std::string canonical_text() const;

 private:
  std::vector<std::vector<CoxOrder>> orders_;
  std::vector<std::string> labels_;
  unsigned cyclo_order_ = 4;
};

CoxeterSystem parse_coxeter_system(std::string_view text);
CoxeterSystem induced_subsystem(const CoxeterSystem& sys, const Subset& t);

// Irreducible finite-type label.  family is one of A B D E F H I;
// dihedral_m is meaningful only for family I (and is then >= 4).
struct ComponentType {
  char family = 'A';
  int rank = 1;
  std::uint32_t dihedral_m = 0;
  std::string name() const;  // "A3", "B4", "E7", "I2(7)", ...
  friend bool operator==(const ComponentType&, const ComponentType&) = default;
};

struct DiagramComponent {
  std::vector<int> nodes;  // generator indices of the subsystem, sorted
  std::optional<ComponentType> type;  // empty: not of finite type
};

struct TypeDecomposition {
  std::vector<DiagramComponent> components;
  bool is_spherical = false;  // every component matched a finite type
};

// Decompose the subsystem induced by t into Coxeter-diagram components and
// match each against the classification of irreducible finite types.
TypeDecomposition classify_finite_type(const CoxeterSystem& sys, const Subset& t);

inline constexpr int kEnumerationRankCap = 20;

// All spherical subsets in increasing lexicographic order, built bottom-up by
// cardinality; a set is only tested once all its maximal proper subsets are
// known spherical.  Throws CapExceeded when rank exceeds rank_cap.
std::vector<Subset> enumerate_spherical_subsets(const CoxeterSystem& sys,
                                                int rank_cap = kEnumerationRankCap);

// Spherical subsets not properly contained in another spherical subset.
std::vector<Subset> maximal_spherical_subsets(const CoxeterSystem& sys,
                                              int rank_cap = kEnumerationRankCap);

using GroupOrder = unsigned __int128;
std::string to_decimal(GroupOrder n);

// |W_T| from the closed-form orders of the irreducible finite types.
// Throws InvalidArgument when the decomposition is not spherical.
GroupOrder order_of(const TypeDecomposition& decomposition);

}  // namespace coxcert
