#pragma once

#include <map>
#include <optional>
#include <vector>

#include "e2hom/base.hpp"

namespace e2hom {

// Dense matrix over Z with arbitrary-precision entries, row major.
struct IntMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<Int> a;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
  IntMatrix(std::size_t r, std::size_t c, std::initializer_list<int> entries)
      : rows(r), cols(c), a(entries.begin(), entries.end()) {
    check(a.size() == r * c, "matrix literal: wrong entry count");
  }

  Int& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const Int& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  static IntMatrix identity(std::size_t n);
  IntMatrix mul(const IntMatrix& o) const;
  IntMatrix transpose() const;
  std::vector<Int> apply(const std::vector<Int>& x) const;  // this * x
  bool is_zero() const;
  bool operator==(const IntMatrix& o) const = default;
};

// U * m * V = D with U, V unimodular and D diagonal, d1 | d2 | ... >= 0.
struct SmithForm {
  IntMatrix d, u, v;
  std::size_t rank = 0;
  std::vector<Int> diagonal() const;  // min(rows,cols) entries of d
};

// Pivot rule: minimal nonzero absolute value in the active submatrix,
// ties broken by lowest (row, col).  Fully deterministic.
SmithForm smith_normal_form(const IntMatrix& m);

// Basis of the full integer kernel lattice of m, one column per basis
// vector.  The lattice is pure: every integer vector killed by m is an
// integer combination of the columns.
IntMatrix kernel_basis(const IntMatrix& m);

// Finitely generated abelian group with a normalized invariant factor
// list (each >= 0, trivial factors dropped, 0 encodes a free summand,
// divisibility chain d1 | d2 | ... before the zeros).  When produced by
// quotient_structure it carries a projection from ambient coordinates
// to canonical coordinates.
struct AbGroup {
  std::vector<Int> factors;

  // projection data (quotient_structure only)
  bool has_projection = false;
  std::size_t ambient = 0;
  IntMatrix u;              // row transform from the relation SNF
  std::vector<Int> diag;    // ambient diagonal entries aligned with u rows
  std::vector<std::size_t> coord_rows;  // rows of u giving the coords

  // Canonical coordinates of an ambient vector, length factors.size():
  // torsion coordinates reduced into [0, d).
  std::vector<Int> project(const std::vector<Int>& x) const;
  bool project_equal(const std::vector<Int>& x, const std::vector<Int>& y) const;

  // arithmetic on reduced coordinates (the vectors project returns)
  std::vector<Int> coord_moduli() const;  // per coordinate; 0 = free
  std::vector<Int> reduced_norm(std::vector<Int> v) const;
  std::vector<Int> reduced_add(const std::vector<Int>& x,
                               const std::vector<Int>& y) const;
  std::vector<Int> reduced_sub(const std::vector<Int>& x,
                               const std::vector<Int>& y) const;
  std::vector<Int> reduced_scale(const Int& c, const std::vector<Int>& x) const;
  bool reduced_equal(const std::vector<Int>& x,
                     const std::vector<Int>& y) const;
  bool reduced_is_zero(const std::vector<Int>& x) const;
  std::vector<Int> reduced_zero() const;

  Int order() const;         // 0 when the group is infinite
  bool is_trivial() const { return factors.empty(); }
  bool same_factors(const AbGroup& o) const { return factors == o.factors; }
  std::size_t free_rank() const;
  std::string describe() const;  // e.g. "Z/2 + Z/4 + Z"
};

// Normalize a multiset of elementary divisors (>= 0) into a divisibility
// chain with the trivial factors dropped.
std::vector<Int> normalize_factors(std::vector<Int> fs);

AbGroup abgroup_from_factors(std::vector<Int> fs);
AbGroup direct_sum(const AbGroup& a, const AbGroup& b);

// Structure of Z^ambient_rank / (column span of relations) together with
// the projection map.  relations may have any number of columns; its row
// count must equal ambient_rank.
AbGroup quotient_structure(std::size_t ambient_rank, const IntMatrix& relations);

// Integer coordinates of target in the column lattice of basis, if any.
// basis columns need not be independent.
std::optional<std::vector<Int>> solve_in_lattice(const IntMatrix& basis,
                                                 const std::vector<Int>& target);

// Reusable form of solve_in_lattice: the column echelon (with expressions
// in the input columns) is built once, then each solve is a back-substitution.
struct LatticeSolver {
  std::size_t dim = 0, k = 0;
  // pivot row -> (echelon column, its expression in input columns)
  std::map<std::size_t, std::pair<std::vector<Int>, std::vector<Int>>> cols;

  LatticeSolver() = default;
  explicit LatticeSolver(const IntMatrix& basis);
  std::optional<std::vector<Int>> solve(const std::vector<Int>& target) const;

 private:
  void insert(std::vector<Int> v, std::vector<Int> expr);
};

// --- subquotients of a group given by coordinate moduli ---------------------
//
// The ambient group is +_i Z/m_i with moduli[i] = m_i (0 = a free Z factor);
// vectors are coordinate columns.  gens are its elements.

// Presentation matrix of the subgroup generated by gens: columns r with
// sum_j r_j gens[j] = 0 in the ambient group.
IntMatrix relations_with_moduli(const std::vector<Int>& moduli,
                                const std::vector<std::vector<Int>>& gens);

// Structure of the subgroup generated by gens.
AbGroup subgroup_with_moduli(const std::vector<Int>& moduli,
                             const std::vector<std::vector<Int>>& gens);

// Structure of ambient / <gens>.
AbGroup quotient_with_moduli(const std::vector<Int>& moduli,
                             const std::vector<std::vector<Int>>& gens);

// Integer combination of gens equal to target in the ambient group.
std::optional<std::vector<Int>> express_with_moduli(
    const std::vector<Int>& moduli, const std::vector<std::vector<Int>>& gens,
    const std::vector<Int>& target);

// Structure of <outer> / <inner>; every inner generator must lie in the
// subgroup generated by outer (checked).
AbGroup subquotient_with_moduli(const std::vector<Int>& moduli,
                                const std::vector<std::vector<Int>>& outer,
                                const std::vector<std::vector<Int>>& inner);

// --- sparse path (rank + invariant factors only, no transforms) ---

// Column-sparse matrix for large boundary operators.
struct SparseMat {
  std::size_t rows = 0, cols = 0;
  std::vector<std::map<std::uint32_t, Int>> col;

  SparseMat() = default;
  SparseMat(std::size_t r, std::size_t c) : rows(r), cols(c), col(c) {}
  void add(std::size_t i, std::size_t j, const Int& v);
};

struct RankFactors {
  std::size_t rank = 0;
  std::vector<Int> factors;  // normalized, 1s dropped
};

// Rank and invariant factors of a sparse matrix.  Eliminates at unit
// pivots with a fill-minimizing (Markowitz) rule, then finishes the
// remaining core with the dense routine.
RankFactors sparse_rank_factors(SparseMat m);

// Incremental integer column echelon form: maintains a basis (in column
// echelon form, pivot rows strictly increasing) of the lattice spanned
// by all inserted columns.  Used to compress wide relation matrices
// before running the dense Smith form.
struct Echelon {
  std::size_t dim;
  // pivot row -> column vector (dense, length dim)
  std::map<std::size_t, std::vector<Int>> cols;

  explicit Echelon(std::size_t d) : dim(d) {}
  void insert(std::vector<Int> v);
  IntMatrix to_matrix() const;
};

// Sparse incremental column echelon over Z with pivot = largest row index.
// Spans the same lattice as Echelon but keeps entries small on the sparse
// near-permutation relations produced by group actions, where the dense
// first-pivot form suffers severe coefficient growth.
struct SparseEchelon {
  using SCol = std::map<std::uint32_t, Int>;
  std::map<std::uint32_t, SCol> pivots;  // pivot row -> column

  void insert(SCol c);
  void insert_dense(const std::vector<Int>& v);
  // columns ordered by pivot row ascending
  IntMatrix to_matrix(std::size_t dim) const;
};

}  // namespace e2hom
