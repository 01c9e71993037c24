#pragma once

#include "e2hom/complex.hpp"

namespace e2hom {

// --- symmetric square of the unit group and the wedge quotient --------------------
//
// A^x is coordinatized through its canonical cyclic decomposition + Z/d_i;
// then A^x (x) A^x is the free module on slots (i,j) with moduli gcd(d_i,d_j),
// S^2_Z(A^x) divides out a(x)b + b(x)a, and the wedge quotient divides
// (A^x ^ A^x) by mu_2 ^ A^x.

struct SymSq {
  TableGroup table;                // multiplicative coordinates of A^x
  std::vector<Int> unit_moduli;    // d_i
  std::vector<Int> tensor_moduli;  // slot (i,j), row-major
  AbGroup ssq;                     // with projection from the tensor ambient
  std::vector<std::pair<std::size_t, std::size_t>> wedge_slots;  // i < j
  std::vector<Int> wedge_moduli;
  AbGroup wedge;  // with projection from the wedge ambient

  std::vector<Int> tensor_of(Elem a, Elem b) const;       // ambient
  std::vector<Int> ssq_of(Elem a, Elem b) const;          // reduced coords
  std::vector<Int> wedge_ambient_of(Elem a, Elem b) const;
  std::vector<Int> wedge_of(Elem a, Elem b) const;
  // alpha: a ^ b -> 2 (a (x) b), on wedge ambient vectors, into reduced S^2
  std::vector<Int> alpha(const std::vector<Int>& w) const;
};
SymSq symmetric_square(const FiniteRing& r, const UnitData& u);

// --- the presented group on symbols (square class, W element) ----------------------

struct RpBar {
  std::vector<Elem> wset;  // sorted W_A
  std::size_t classes = 0;
  std::size_t symbols = 0;  // classes * wset.size()
  AbGroup structure;        // with projection from Z^symbols
  IntMatrix relations;      // kept five-term relations with all translates
  std::size_t relation_pairs = 0;  // (a,b) candidates kept
  std::size_t skipped_pairs = 0;   // an argument landed outside W
  IntMatrix lambda1;               // symbols -> Z[G_A], rows indexed by classes
  std::vector<std::vector<Int>> lambda2;  // per symbol: tensor-ambient vector
  bool lambda1_kills_relations = false;
  bool lambda2_kills_relations = false;

  std::size_t symbol_index(std::size_t cls, std::size_t wi) const;
};
RpBar rp_bar_presentation(const FiniteRing& r, const UnitData& u, const SymSq& sq);

// The five-term relation vector attached to (a, b), untranslated; requires
// a, b, b/a and both remaining arguments to lie in W_A.
std::vector<Int> five_term_element(const FiniteRing& r, const UnitData& u,
                                   const RpBar& rp, Elem a, Elem b);

// --- the geometric group: coinvariants of the degree-2 cycle lattice ----------------

struct RpGeom {
  std::size_t z_rank = 0;
  IntMatrix z_basis;     // Y_2 x z_rank column echelon basis of ker(d2)
  IntMatrix relations;   // coinvariant relations in cycle coordinates
  AbGroup rp;            // with projection from Z^z_rank
  IntMatrix lambda1;     // cycle coordinates -> Z[G_A]
  IntMatrix rp1_lattice; // kernel lattice of lambda1 in cycle coordinates
  AbGroup rp1;           // its image in rp
  // every degree-3 boundary maps to zero under d2, hence lies in the pure
  // cycle lattice and has a well-defined class in rp
  bool boundaries_are_cycles = false;
};
RpGeom rp_geometric(const YComplex& y, const UnitData& u);

// --- the symbol-to-geometry map ------------------------------------------------------

struct EtaMap {
  IntMatrix matrix;           // symbols -> cycle coordinates
  bool well_defined = false;  // relations die in rp
  bool lambda_match = false;  // lambda1_bar == lambda1 . eta, exactly
  bool surjective = false;
  AbGroup h1, h2, h3;
  bool exact_below4 = false;
  bool iso = false;  // surjective and exact
};
EtaMap eta_map(const YComplex& y, const UnitData& u, const RpBar& rp,
               const RpGeom& geo);

// --- refined Bloch groups -------------------------------------------------------------

struct RefinedBloch {
  AbGroup rp1_bar;  // ker(lambda1_bar)
  AbGroup rb_bar;   // ker(lambda2_bar restricted to it)
  AbGroup rb;       // geometric: ker(lambda2 restricted to ker lambda1)
  bool lambda2_well_defined = false;  // symbol expressions give one map on rp
  bool composite_matches = false;     // lambda2 . eta == lambda2_bar on symbols
  bool alpha_compatible = false;      // wedge route * alpha == 2 * lambda2_bar
  bool comparison_onto = false;       // the induced map rb_bar -> rb is onto
};
// Requires eta.surjective (refused otherwise).
RefinedBloch refined_bloch(const FiniteRing& r, const UnitData& u, const SymSq& sq,
                           const RpBar& rp, const RpGeom& geo, const EtaMap& eta);

}  // namespace e2hom
