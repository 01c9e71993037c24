#pragma once

#include "e2hom/complex.hpp"

namespace e2hom {

// --- normalized bar chains --------------------------------------------------------
//
// Chains of the bar complex of a matrix group G (as a GroupTable), with
// trivial coefficients and coinvariants already taken: a degree-k basis
// element is a tuple [g1|...|gk] of element indices.  The complex is the
// NORMALIZED one: a tuple containing the identity is zero, and is dropped
// at insertion time, so "equal chains" means equal after normalization.

struct BarChain {
  int k = 0;
  std::map<std::vector<std::uint32_t>, Int> terms;
};

BarChain bar_chain(int k);
// ch += c * [t]; degenerate tuples and cancelled coefficients are removed
void bar_add(BarChain& ch, const GroupTable& g, const std::vector<std::uint32_t>& t,
             const Int& c);
// a += c * b
void bar_acc(BarChain& a, const GroupTable& g, const BarChain& b, const Int& c);
bool bar_equal(const BarChain& a, const BarChain& b);

// Boundary with trivial coefficients:
//   d[g1|...|gk] = [g2|...|gk] + sum_i (-1)^i [g1|..|g_i g_{i+1}|..|gk]
//                + (-1)^k [g1|...|g_{k-1}].
// For k = 1 the two outer faces cancel, giving the zero chain.
BarChain bar_boundary(const GroupTable& g, const BarChain& ch);

// True when bar_boundary vanishes.
bool verify_cycle(const GroupTable& g, const BarChain& ch);

// The outer-shuffle product [c] * z for a 2-chain z and a central c with
// c^2 = 1: each [g|h] contributes [c|g|h] - [g|c|h] + [g|h|c].  The result
// is a 3-cycle whenever z is a 2-cycle.
BarChain shuffle_product(const GroupTable& g, std::uint32_t c, const BarChain& z);

// --- chains of B_k(G) (x)_G Y_n ----------------------------------------------------
//
// Basis element: ([g1|...|gk], s) with s a Y_n basis index.  Same
// normalization of the bar part.

struct TensorChain {
  int k = 0, n = 0;
  std::map<std::pair<std::vector<std::uint32_t>, std::uint32_t>, Int> terms;
};

TensorChain tensor_chain(int k, int n);
void tensor_add(TensorChain& ch, const GroupTable& g,
                const std::vector<std::uint32_t>& bar, std::uint32_t s, const Int& c);
void tensor_acc(TensorChain& a, const GroupTable& g, const TensorChain& b,
                const Int& c);
bool tensor_equal(const TensorChain& a, const TensorChain& b);
// [] (x) z for a Y_n chain z
TensorChain tensor_from_y(const GroupTable& g, int n, const Chain& z);

// d_k (x) id: the first face moves g1 onto the coefficient,
//   ([g2|..|gk], g1^-1 s) + sum_i (-1)^i ([g1|..|g_i g_{i+1}|..|gk], s)
//                         + (-1)^k ([g1|..|g_{k-1}], s).
TensorChain tensor_bar_boundary(const GroupTable& g, const YComplex& y,
                                const TensorChain& ch);
// id (x) boundary of Y.  The two maps commute and each squares to zero,
// which is exactly "the total differential bar + (-1)^k Y squares to zero"
// stated per bidegree component.
TensorChain tensor_y_boundary(const GroupTable& g, const YComplex& y,
                              const TensorChain& ch);

// --- the explicit 2-chains --------------------------------------------------------

// The eleven-term chain R_z attached to a unit z (2 must be a unit):
// its boundary is exactly [w^-1] + [D(z)].
BarChain r_chain(const FiniteRing& r, const GroupTable& g, Elem z);

// Generators of the second homology:
//   f = [D(a)|D(b)] + R_ab - R_a - R_b + R_1      (needs 2 a unit)
//   g = [E12(x)|E12(y)] - [E12(y)|E12(x)]
//   h = [D(a)|D(b)] - [D(b)|D(a)]
BarChain f_cycle(const FiniteRing& r, const GroupTable& g, Elem a, Elem b);
BarChain g_cycle(const FiniteRing& r, const GroupTable& g, Elem x, Elem y);
BarChain h_cycle(const FiniteRing& r, const GroupTable& g, Elem a, Elem b);

struct StandardCycles {
  BarChain f, g, h;
};
StandardCycles standard_cycles(const FiniteRing& r, const GroupTable& g, Elem a,
                               Elem b, Elem x, Elem y);

// --- the connecting-map replay ------------------------------------------------------

struct GrothendieckWitt;  // invariants module

// Chain-level replay of the double connecting map on the class of f_cycle(a,b):
// lifts [f] through the augmentation, peels both boundary steps with the
// explicit chains above, and lands on the kernel class of
// d((inf,0,ab) - (inf,0,a) - (inf,0,b) + (inf,0,1)).
struct ConnectingReplay {
  bool lift_ok = false;     // (d1 x id)(Gamma_z (x) (inf,0)) = [] (x) X_z
  bool r_step_ok = false;   // U_z + [D(z)](x)inf = (d2 x id)((R_z - R_1)(x)inf)
  bool main_ok = false;     // (d2 x id)(f (x) inf) = U_ab - U_a - U_b
  std::vector<Int> value;   // canonical coordinates in GW(A)
  std::vector<Int> pontryagin;
  bool matches = false;
};

ConnectingReplay connecting_replay(const YComplex& y, const GroupTable& e2,
                                   const GrothendieckWitt& gw, Elem a, Elem b);

}  // namespace e2hom
