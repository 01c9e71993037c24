#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <unordered_map>

#include "e2hom/ring.hpp"

namespace e2hom {

// --- 2x2 matrices over a finite ring -----------------------------------------

struct Mat2 {
  Elem a, b, c, d;  // row major: [[a,b],[c,d]]
  auto operator<=>(const Mat2&) const = default;
};

Mat2 m2_identity(const FiniteRing& r);
Mat2 m2_mul(const FiniteRing& r, const Mat2& x, const Mat2& y);
Elem m2_det(const FiniteRing& r, const Mat2& m);
Mat2 m2_inv(const FiniteRing& r, const Mat2& m);  // det must be a unit
Mat2 m2_neg(const FiniteRing& r, const Mat2& m);
std::string m2_show(const FiniteRing& r, const Mat2& m);

// distinguished elements
Mat2 e12(const FiniteRing& r, Elem x);      // [[1,x],[0,1]]
Mat2 e21(const FiniteRing& r, Elem x);      // [[1,0],[x,1]]
Mat2 diag_u(const FiniteRing& r, Elem a);   // D(a) = [[a,0],[0,a^-1]]
Mat2 upper(const FiniteRing& r, Elem a, Elem x);  // [[a,x],[0,a^-1]]
Mat2 w_mat(const FiniteRing& r);            // [[0,1],[-1,0]]
Mat2 g_mat(const FiniteRing& r, Elem z);    // [[0,1],[-1,z]], z a unit
Mat2 h_mat(const FiniteRing& r, Elem z);    // E12(z^-1), z a unit

// --- finite matrix groups ------------------------------------------------------

struct GroupTable {
  static constexpr std::uint32_t npos = static_cast<std::uint32_t>(-1);

  FiniteRing ring;  // owned copy: tables must outlive any ring they came from
  std::vector<Mat2> elems;  // index -> representative matrix
  // every member matrix (for quotients: of every coset) -> index
  std::unordered_map<std::uint64_t, std::uint32_t> index;
  std::vector<std::uint32_t> gens;  // generator indices
  // BFS parent and generator position per element (empty for quotients)
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pred;
  std::uint32_t id = 0;

  std::size_t size() const { return elems.size(); }
  std::uint64_t key(const Mat2& m) const;
  bool contains(const Mat2& m) const { return index.count(key(m)) != 0; }
  std::uint32_t of(const Mat2& m) const;  // checked lookup
  std::uint32_t mul(std::uint32_t i, std::uint32_t j) const;
  std::uint32_t inv(std::uint32_t i) const;
  std::uint32_t conj(std::uint32_t g, std::uint32_t x) const;  // g^-1 x g
  // generator word for an element, left-to-right product order
  std::vector<std::uint32_t> word(std::uint32_t i) const;
};

// Breadth-first closure of a generator list.  Deterministic numbering:
// identity first, then discovery order (scanning generators in order).
GroupTable generate_closure(const FiniteRing& r, const std::vector<Mat2>& gens,
                            std::size_t cap = 50000);

// E2(A): closure of all E12(x), E21(x).
GroupTable elementary_group(const FiniteRing& r, std::size_t cap = 50000);

// B(A): closure of all D(a) and E12(x).
GroupTable borel_group(const FiniteRing& r, std::size_t cap = 50000);

// SL2 by determinant filter next to E2 by closure, plus the equality flag.
struct Sl2Compare {
  GroupTable sl2;  // enumeration order, no generators
  GroupTable e2;
  bool equal = false;
};
Sl2Compare sl2_and_e2(const FiniteRing& r, std::size_t cap = 50000);

// --- distinguished subgroups ----------------------------------------------------

struct StandardSubgroups {
  std::vector<std::uint32_t> b, t, n;  // sorted element indices
  std::uint32_t w = GroupTable::npos;
  std::map<Elem, std::uint32_t> d_of;    // unit a -> index of D(a)
  std::map<Elem, std::uint32_t> e12_of;  // x -> index of E12(x)
  std::map<Elem, std::uint32_t> e21_of;  // x -> index of E21(x)
};

StandardSubgroups standard_subgroups(const FiniteRing& r, const GroupTable& g);

// --- abelianization --------------------------------------------------------------

struct Abelianized {
  std::vector<std::uint32_t> derived;  // sorted indices of [G,G]
  AbGroup structure;
  std::vector<std::uint32_t> coset_of;        // element index -> coset id
  std::vector<std::vector<Int>> coset_coord;  // coset id -> class coordinates

  const std::vector<Int>& coord_of(std::uint32_t g) const {
    return coset_coord[coset_of[g]];
  }
  bool same_class(std::uint32_t x, std::uint32_t y) const {
    return coset_of[x] == coset_of[y];
  }
};

// Derived subgroup as the normal closure of generator commutators, then the
// abelian quotient structure from the coset multiplication table.
Abelianized abelianize(const GroupTable& g);
AbGroup abelianization(const GroupTable& g);

// G/{±I}; returns G itself when -I = I.
GroupTable central_quotient(const GroupTable& g);

}  // namespace e2hom
