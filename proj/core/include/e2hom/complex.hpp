#pragma once

#include <unordered_map>

#include "e2hom/group.hpp"

namespace e2hom {

// --- projective line -----------------------------------------------------------

struct ProjLine {
  // canonical representative (lexicographically least scaling) per point
  std::vector<std::pair<Elem, Elem>> points;
  // every unimodular vector (u,v), keyed u*n+v, to its point index
  std::unordered_map<std::uint64_t, std::uint32_t> index;
  std::uint32_t infinity = 0;  // <e1>
  std::uint32_t origin = 0;    // <e2>

  std::size_t size() const { return points.size(); }
  std::uint32_t of_vector(const FiniteRing& r, Elem u, Elem v) const;
  std::uint32_t affine(const FiniteRing& r, Elem a) const;  // <e1 + a e2>
  std::string label(const FiniteRing& r, std::uint32_t p) const;
};

ProjLine proj_points(const FiniteRing& r);

// --- the complex of tuples in general position ----------------------------------

using Tuple = std::vector<std::uint32_t>;  // point indices, length = degree+1
using Chain = std::map<std::uint32_t, Int>;  // basis index -> coefficient

struct YComplex {
  FiniteRing ring;  // owned copy
  ProjLine line;
  int max_degree = 0;
  std::vector<std::vector<Tuple>> basis;  // [n] = lex-ordered tuples
  std::vector<SparseMat> bnd;             // [n] = boundary Y_n -> Y_{n-1}, n >= 1
  std::vector<Mat2> action_gens;          // elementary matrices over an additive basis
  // act[n][g] = permutation of basis[n] induced by action_gens[g]
  std::vector<std::vector<std::vector<std::uint32_t>>> act;

  std::size_t dim(int n) const { return basis[n].size(); }
  std::uint32_t tuple_index(int n, const Tuple& t) const;  // checked
  std::uint32_t apply_point(const Mat2& g, std::uint32_t p) const;
  Tuple apply_tuple(const Mat2& g, const Tuple& t) const;
  Chain boundary_of(int n, std::uint32_t i) const;  // column of bnd[n]
  std::string tuple_label(int n, std::uint32_t i) const;
};

// Pairwise general position = unit determinant of representatives.  Throws
// CapError when a basis would exceed simplex_cap.
YComplex build_y_complex(const FiniteRing& r, int max_degree = 4,
                         std::size_t simplex_cap = 2000000);

// H_k of the complex (k+1 <= built degree): kernel mod image via sparse
// rank/invariant-factor elimination; kernels of the boundary maps are pure,
// so factors of the incoming map plus a free rank determine the group.
AbGroup y_homology(const YComplex& y, int k);

// --- orbit canonicalization -------------------------------------------------------

struct OrbitClass {
  std::size_t class_index = 0;  // index into UnitData::class_reps
  Elem class_rep = 0;           // unit a with tuple ~ (inf, 0, a, a x, a y)
  Elem w_param = 0;             // x (degrees 3 and 4)
  Elem w_param2 = 0;            // y (degree 4)
  Mat2 transporter;             // maps the input tuple to the canonical tuple
  Tuple canonical;
};

// degrees 2, 3 and 4
OrbitClass canonicalize_tuple(const YComplex& y, const UnitData& u,
                              const Tuple& t);

// --- coinvariants -------------------------------------------------------------------

struct Coinvariants {
  AbGroup structure;                     // free on the orbits
  std::vector<std::uint32_t> orbit_of;   // per basis index
  std::vector<std::uint32_t> orbit_rep;  // least basis index per orbit
  std::vector<std::string> labels;

  std::size_t rank() const { return orbit_rep.size(); }
};

Coinvariants y_coinvariants(const YComplex& y, int n, const UnitData& u);

}  // namespace e2hom
