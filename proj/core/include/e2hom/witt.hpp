#pragma once

#include "e2hom/chains.hpp"

namespace e2hom {

// --- Grothendieck-Witt group of the ring: H_0(E2, Z1) ------------------------------
//
// Z1 = ker(Y_1 -> Y_0) carries an integral basis of fundamental cycles of
// the general-position graph (one per non-tree edge of a spanning tree);
// the group is the quotient of that lattice by the action differences.

struct GwElem {
  std::vector<Int> ambient;  // fundamental-cycle coordinates
  std::vector<Int> coords;   // canonical reduced coordinates in `structure`
};

struct GrothendieckWitt {
  static constexpr std::uint32_t npos = static_cast<std::uint32_t>(-1);

  FiniteRing ring;  // owned copy
  std::size_t cycle_rank = 0;
  std::vector<std::uint32_t> nontree;     // coordinate -> Y_1 basis index
  std::vector<std::uint32_t> edge_coord;  // Y_1 basis index -> coordinate / npos
  std::vector<Chain> cycle;               // fundamental cycles, Y_1 coordinates
  AbGroup structure;
  std::vector<Int> eps;  // augmentation (coefficient sum) per coordinate
  bool eps_onto = false;

  std::vector<Elem> reps;          // square-class representatives
  std::map<Elem, GwElem> cls;      // unit a -> class of <<a>> = [X_a]
  std::map<Elem, GwElem> beta;     // class rep a -> [boundary of (inf,0,a)]

  // coordinates of a kernel chain; membership is checked by reconstruction
  std::vector<Int> cycle_coords(const Chain& z) const;
  GwElem from_ambient(std::vector<Int> v) const;
  GwElem element(const Chain& z) const;
  Int augmentation(const GwElem& e) const;
  bool equal(const GwElem& a, const GwElem& b) const;
  // <<ab>> - <<a>> - <<b>>; always has augmentation zero
  GwElem pontryagin(Elem a, Elem b) const;
};

GrothendieckWitt grothendieck_witt(const YComplex& y);

// I(A) = ker(augmentation) with generators in canonical GW coordinates.
struct AugIdeal {
  std::vector<std::vector<Int>> gens;
  AbGroup structure;
};
AugIdeal augmentation_ideal(const GrothendieckWitt& gw);

// --- the Borel side: B(A)-data shared by the differentials --------------------------

struct BorelContext {
  FiniteRing ring;  // owned copy
  UnitData units;
  TableGroup ga;   // A^x modulo squares, with coordinates
  AddQuotient ax;  // A_{A^x} = A / <(u^2-1)x>
  std::vector<Int> moduli;  // ga ++ ax coordinate moduli
  GroupTable borel;
  Abelianized bab;

  std::vector<Int> concat(const std::vector<Int>& g,
                          const std::vector<Int>& x) const;
  std::vector<Int> reduce(std::vector<Int> v) const;
  std::vector<Int> zero() const;
  // [[u,x],[0,u^-1]] -> (<u>, class of u^-1 x); kills D(s^2) classes
  std::vector<Int> phi(const Mat2& m) const;
  // closed form of the second differential: 3 (<a>, class of 1-a)
  std::vector<Int> d2(Elem a) const;
};
BorelContext borel_context(const FiniteRing& r);

// --- first-page differentials in homological degree <= 1 ---------------------------

struct D1Report {
  std::vector<Elem> kernel;  // units a with D(a^2) trivial in B(A)^ab, sorted
  bool kernel_is_mu2 = false;
  AbGroup cokernel;
  bool cokernel_matches = false;  // == G_A + A_{A^x}
  // degree-0 row (orbit bases), when a complex is supplied
  bool row0_checked = false;
  bool row0_first_zero = false;  // (Y_1)_G -> (Y_0)_G is the zero map
  bool row0_second_ones = false;  // (Y_2)_G -> (Y_1)_G sends every orbit to 1
};
D1Report d1_differentials(const BorelContext& ctx, const YComplex* y = nullptr);

// --- the second differential: closed form and its proof replay ---------------------

std::vector<Int> d2_differential(const BorelContext& ctx, Elem a);

struct D2Replay {
  bool lift_ok = false;    // (d1 x id)(Gamma_a (x) (inf,0)) = [] (x) X_a
  bool null1_ok = false;   // stage after the first null element, exact chain
  bool null2_ok = false;   // stage after the second
  bool null3_ok = false;   // stage after the third
  bool in_borel = false;   // the six surviving entries are upper triangular
  bool product_ok = false; // their product is D(a)^-1 E12(3 - 2a - a^-1)
  bool abelian_ok = false; // class arithmetic agrees in B(A)^ab
  std::vector<Int> value;  // phi of the surviving chain
  std::vector<Int> closed; // d2_differential(a)
  bool matches = false;
};
D2Replay replay_d2_proof(const BorelContext& ctx, const YComplex& y,
                         const GroupTable& e2, Elem a);

// --- I^2 as the kernel of the induced second differential --------------------------

struct ISquared {
  std::vector<Elem> reps;       // unit classes <> <1> indexing the generators
  IntMatrix combo;              // column j = coefficients of gen j over <<rep_i>>
  std::vector<std::vector<Int>> gens;  // canonical GW coordinates
  AbGroup structure;
  bool span_equals_ideal = false;  // span(<<a>>) == ker(augmentation)
};
// Requires a ring universal for rank-two elementary groups (refused otherwise).
ISquared i_squared(const BorelContext& ctx, const GrothendieckWitt& gw);

struct PontryaginReport {
  GwElem value;
  bool eps_zero = false;
  bool kernel_checked = false;  // membership check ran (2 a unit or A_{A^x} = 0)
  bool in_kernel = false;       // d2-image of the defining expression vanishes
};
PontryaginReport pontryagin_product(const BorelContext& ctx,
                                    const GrothendieckWitt& gw, Elem a, Elem b);

// --- H_1 comparison -----------------------------------------------------------------

struct H1Compare {
  AbGroup a_mod_m;  // A/M
  AbGroup h1;       // abelianization of E2(A)
  bool universal = false;
  bool map_defined = false;    // x -> [E12(x)] kills every M generator
  bool e12_generates = false;  // E12 classes generate the abelianization
  bool isomorphic = false;     // the map is a bijection
  // universal rings: coker(I -> G_A + A_{A^x}) == A/M via the explicit
  // mutually inverse maps (checked elementwise)
  bool sequence_checked = false;
  bool sequence_ok = false;
};
H1Compare h1_compare(const BorelContext& ctx, const GroupTable& e2);

// --- symbolic Grothendieck-Witt and the comparison ----------------------------------

struct BarWitt {
  std::vector<Elem> reps;  // square-class representatives (ambient basis)
  AbGroup gw_bar;          // Z[G_A] / (<<a>><<1-a>> : a in W_A)
  AbGroup ibar;            // augmentation ideal
  AbGroup ibar2;
  AbGroup ibar_mod_ibar2;
  bool matches_ga = false;  // Ibar/Ibar^2 == G_A
  // comparison <g> -> [boundary of (inf,0,g)] into GW(A), when supplied
  bool compared = false;
  bool well_defined = false;
  bool onto = false;
  bool bijective = false;
};
BarWitt bar_witt_suite(const FiniteRing& r, const UnitData& u,
                       const GrothendieckWitt* gw = nullptr);

// --- exactness at I(A) ---------------------------------------------------------------

struct IIExactness {
  AbGroup coker;     // I(A) / span(<<a>>)
  AbGroup h1_coinv;  // H_1(Y)_{E2} = GW / span([beta_a])
  bool match = false;
};
IIExactness ii_exactness(const GrothendieckWitt& gw);

}  // namespace e2hom
