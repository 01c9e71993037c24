#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "e2hom/linalg.hpp"

namespace e2hom {

// Element of a finite ring (or finite group): a dense table index.
using Elem = std::uint32_t;

// --- ring expressions -------------------------------------------------------

struct RingAtom {
  enum class Kind { modular, field, trunc_poly };
  Kind kind;
  std::uint64_t n = 0;  // modulus (modular)
  std::uint64_t p = 0;  // characteristic prime (field, trunc_poly)
  std::uint64_t d = 0;  // extension degree (field)
  std::uint64_t k = 0;  // nilpotency degree (trunc_poly)

  std::uint64_t size() const;
  std::string render() const;
};

struct RingSpec {
  std::vector<RingAtom> atoms;  // nonempty; the ring is their product
  std::string canonical() const;
};

// Grammar: spec := atom { "x" atom }
//          atom := "Z/" uint | "GF(" uint ")" | "F" prime "[t]/t^" uint
// Whitespace is insignificant around tokens.  Throws ParseError with the
// byte offset of the offending token.
RingSpec parse_ring_spec(const std::string& text);

// --- finite commutative rings ----------------------------------------------

struct FiniteRing {
  std::string name;  // canonical spec text
  std::size_t n = 0;
  Elem zero = 0, one = 0;
  std::vector<Elem> add_t;  // n*n row major
  std::vector<Elem> mul_t;  // n*n row major
  std::vector<Elem> neg_t;  // n
  std::vector<Elem> inv_t;  // n; value n means "not a unit"
  std::vector<std::string> labels;
  std::vector<Elem> units;  // sorted ascending

  Elem add(Elem a, Elem b) const { return add_t[a * n + b]; }
  Elem mul(Elem a, Elem b) const { return mul_t[a * n + b]; }
  Elem neg(Elem a) const { return neg_t[a]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  bool is_unit(Elem a) const { return inv_t[a] != n; }
  Elem inv(Elem a) const;
  Elem pow(Elem a, std::uint64_t e) const;
  Elem int_elem(long long k) const;  // image of k under Z -> A
  const std::string& label(Elem a) const { return labels[a]; }
};

// Builds the ring described by the spec.  Product rings are componentwise;
// GF(p^d) is F_p[t] modulo the lexicographically least monic irreducible of
// degree d; F_p[t]/t^k is truncated polynomials.  Throws CapError if the
// element count would exceed size_cap.
FiniteRing build_ring(const RingSpec& spec, std::size_t size_cap = 4096);
FiniteRing build_ring_named(const std::string& text, std::size_t size_cap = 4096);

// Exhaustive search for a ring isomorphism (bijection preserving both
// tables).  Practical for |A| up to a few dozen.
bool rings_isomorphic(const FiniteRing& a, const FiniteRing& b);

// --- abelian structure from multiplication tables ---------------------------

// Structure of a finite abelian group (elements from a table), optionally
// modulo the subgroup generated by `kill`.  Generators are discovered
// lazily in `elems` order, so the output is deterministic.
struct TableGroup {
  std::vector<Elem> elems;  // discovery order, starting at the identity
  std::vector<Elem> gens;
  AbGroup structure;
  std::map<Elem, std::vector<Int>> coords;  // reduced class coordinates

  const std::vector<Int>& coord(Elem e) const;
  bool same_class(Elem a, Elem b) const { return coord(a) == coord(b); }
};

TableGroup abelian_table_group(const std::vector<Elem>& elems,
                               const std::function<Elem(Elem, Elem)>& op,
                               Elem id, const std::vector<Elem>& kill = {});

// --- unit-group data ---------------------------------------------------------

struct UnitData {
  std::vector<Elem> units;         // sorted
  std::vector<Elem> unit_squares;  // the set (A x)^2, sorted
  AbGroup unit_group;              // structure of A^x
  AbGroup square_classes;          // G_A = A^x/(A^x)^2
  std::vector<std::size_t> class_of;  // per element; npos for non-units
  std::vector<Elem> class_reps;       // least unit in each class
  std::vector<Elem> mu2;              // {a : a^2 = 1}, sorted

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t square_class(Elem a) const;  // checked class index
};

UnitData unit_data(const FiniteRing& r);

// n-torsion of the unit group: {a in A^x : a^n = 1}, sorted.
std::vector<Elem> mu_n(const FiniteRing& r, std::uint64_t n);

// W_A = {a : a(1-a) is a unit}, sorted.
std::vector<Elem> w_set(const FiniteRing& r);

// --- local structure ---------------------------------------------------------

struct LocalFactor {
  FiniteRing ring;
  Elem idempotent;              // identity of the factor inside the parent
  std::vector<Elem> elements;   // parent ids of the factor's elements, sorted
  std::size_t residue_size = 0; // |factor / J(factor)|
};

struct LocalDecomposition {
  std::vector<LocalFactor> factors;  // ordered by idempotent id
  std::vector<Elem> jacobson;        // J(A), sorted
  bool universal = false;  // no two residue fields of sizes {2,2} or {2,3}
};

LocalDecomposition local_decomposition(const FiniteRing& r);

// --- additive subgroups and quotients ----------------------------------------

struct AddSubgroup {
  std::vector<Elem> elems;   // sorted; always contains 0
  std::vector<Elem> gens;
  std::vector<char> member;  // size |A|
  bool contains(Elem a) const { return member[a] != 0; }
};

AddSubgroup additive_closure(const FiniteRing& r, std::vector<Elem> gens);

// Quotient of (A,+) by the subgroup generated by gens, with class
// coordinates for every ring element.
struct AddQuotient {
  AddSubgroup subgroup;
  AbGroup structure;
  std::vector<std::vector<Int>> cls;  // per ring element

  bool same_class(Elem a, Elem b) const { return cls[a] == cls[b]; }
};

AddQuotient additive_quotient(const FiniteRing& r, std::vector<Elem> gens);

// M = additive closure of {x(a^2-1)} and {3(b+1)(c+1)}, plus A/M.
AddQuotient m_subgroup(const FiniteRing& r);

// A_{A^x}: quotient of (A,+) by the subgroup generated by {(a^2-1)x}.
AddQuotient a_lower(const FiniteRing& r);

// The cyclic group Z/gcd(n^2, 2n).
AbGroup tilde_extension(std::uint64_t n);

}  // namespace e2hom
