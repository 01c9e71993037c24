#include "e2hom/linalg.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace e2hom {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; i++) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::mul(const IntMatrix& o) const {
  check(cols == o.rows, "matrix product shape mismatch");
  IntMatrix r(rows, o.cols);
  for (std::size_t i = 0; i < rows; i++)
    for (std::size_t k = 0; k < cols; k++) {
      const Int& v = at(i, k);
      if (v == 0) continue;
      for (std::size_t j = 0; j < o.cols; j++) {
        const Int& w = o.at(k, j);
        if (w != 0) r.at(i, j) += v * w;
      }
    }
  return r;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix r(cols, rows);
  for (std::size_t i = 0; i < rows; i++)
    for (std::size_t j = 0; j < cols; j++) r.at(j, i) = at(i, j);
  return r;
}

std::vector<Int> IntMatrix::apply(const std::vector<Int>& x) const {
  check(x.size() == cols, "matrix apply shape mismatch");
  std::vector<Int> y(rows);
  for (std::size_t i = 0; i < rows; i++) {
    Int acc = 0;
    for (std::size_t j = 0; j < cols; j++)
      if (a[i * cols + j] != 0 && x[j] != 0) acc += a[i * cols + j] * x[j];
    y[i] = acc;
  }
  return y;
}

bool IntMatrix::is_zero() const {
  for (const Int& v : a)
    if (v != 0) return false;
  return true;
}

std::vector<Int> SmithForm::diagonal() const {
  std::size_t n = std::min(d.rows, d.cols);
  std::vector<Int> out(n);
  for (std::size_t i = 0; i < n; i++) out[i] = d.at(i, i);
  return out;
}

namespace {

struct SnfWork {
  IntMatrix d;
  IntMatrix u, v;
  bool track;

  void row_swap(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < d.cols; c++) std::swap(d.at(i, c), d.at(j, c));
    if (track)
      for (std::size_t c = 0; c < u.cols; c++) std::swap(u.at(i, c), u.at(j, c));
  }
  void col_swap(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < d.rows; r++) std::swap(d.at(r, i), d.at(r, j));
    if (track)
      for (std::size_t r = 0; r < v.rows; r++) std::swap(v.at(r, i), v.at(r, j));
  }
  void row_neg(std::size_t i) {
    for (std::size_t c = 0; c < d.cols; c++) d.at(i, c) = -d.at(i, c);
    if (track)
      for (std::size_t c = 0; c < u.cols; c++) u.at(i, c) = -u.at(i, c);
  }
  // row_i -= q * row_r
  void row_sub(std::size_t i, std::size_t r, const Int& q) {
    if (q == 0) return;
    for (std::size_t c = 0; c < d.cols; c++)
      if (d.at(r, c) != 0) d.at(i, c) -= q * d.at(r, c);
    if (track)
      for (std::size_t c = 0; c < u.cols; c++)
        if (u.at(r, c) != 0) u.at(i, c) -= q * u.at(r, c);
  }
  // col_j -= q * col_c
  void col_sub(std::size_t j, std::size_t c, const Int& q) {
    if (q == 0) return;
    for (std::size_t r = 0; r < d.rows; r++)
      if (d.at(r, c) != 0) d.at(r, j) -= q * d.at(r, c);
    if (track)
      for (std::size_t r = 0; r < v.rows; r++)
        if (v.at(r, c) != 0) v.at(r, j) -= q * v.at(r, c);
  }
};

// Minimal |value| in the active submatrix, ties by lowest (row, col).
bool find_pivot(const IntMatrix& d, std::size_t start, std::size_t& pr,
                std::size_t& pc) {
  bool found = false;
  Int best = 0;
  for (std::size_t i = start; i < d.rows; i++)
    for (std::size_t j = start; j < d.cols; j++) {
      const Int& x = d.at(i, j);
      if (x == 0) continue;
      Int ax = x < 0 ? -x : x;
      if (!found || ax < best) {
        found = true;
        best = ax;
        pr = i;
        pc = j;
        if (best == 1 && i == start) break;  // cannot improve within this row
      }
    }
  return found;
}

void snf_run(SnfWork& w) {
  IntMatrix& d = w.d;
  std::size_t n = std::min(d.rows, d.cols);
  for (std::size_t r = 0; r < n; r++) {
    std::size_t pr = 0, pc = 0;
    if (!find_pivot(d, r, pr, pc)) break;
    w.row_swap(r, pr);
    w.col_swap(r, pc);
    for (;;) {
      if (d.at(r, r) < 0) w.row_neg(r);
      bool clean = true;
      // clear column r below the pivot
      for (std::size_t i = r + 1; i < d.rows; i++) {
        if (d.at(i, r) == 0) continue;
        Int q = d.at(i, r) / d.at(r, r);
        w.row_sub(i, r, q);
        if (d.at(i, r) != 0) {
          // remainder has smaller magnitude: promote it to the pivot
          w.row_swap(r, i);
          clean = false;
        }
      }
      if (!clean) continue;
      // clear row r right of the pivot
      for (std::size_t j = r + 1; j < d.cols; j++) {
        if (d.at(r, j) == 0) continue;
        Int q = d.at(r, j) / d.at(r, r);
        w.col_sub(j, r, q);
        if (d.at(r, j) != 0) {
          w.col_swap(r, j);
          clean = false;
        }
      }
      if (!clean) continue;
      // pivot must divide the remaining submatrix for the chain property
      bool divides = true;
      for (std::size_t i = r + 1; i < d.rows && divides; i++)
        for (std::size_t j = r + 1; j < d.cols && divides; j++)
          if (d.at(i, j) % d.at(r, r) != 0) {
            w.row_sub(r, i, Int(-1));  // row_r += row_i, reintroduces work
            divides = false;
          }
      if (divides) break;
    }
  }
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  SnfWork w{m, IntMatrix::identity(m.rows), IntMatrix::identity(m.cols), true};
  snf_run(w);
  SmithForm s;
  s.d = std::move(w.d);
  s.u = std::move(w.u);
  s.v = std::move(w.v);
  std::size_t n = std::min(s.d.rows, s.d.cols);
  while (s.rank < n && s.d.at(s.rank, s.rank) != 0) s.rank++;
  return s;
}

IntMatrix kernel_basis(const IntMatrix& m) {
  SmithForm s = smith_normal_form(m);
  std::size_t k = m.cols - s.rank;
  IntMatrix ker(m.cols, k);
  for (std::size_t j = 0; j < k; j++)
    for (std::size_t i = 0; i < m.cols; i++)
      ker.at(i, j) = s.v.at(i, s.rank + j);
  return ker;
}

std::vector<Int> normalize_factors(std::vector<Int> fs) {
  std::size_t zeros = 0;
  std::vector<Int> t;
  for (Int& f : fs) {
    if (f < 0) f = -f;
    if (f == 0)
      zeros++;
    else if (f != 1)
      t.push_back(f);
  }
  // pairwise gcd/lcm sweep to restore the divisibility chain
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < t.size(); i++)
      for (std::size_t j = i + 1; j < t.size(); j++) {
        if (t[j] % t[i] == 0) continue;
        Int g = int_gcd(t[i], t[j]);
        Int l = t[i] / g * t[j];
        t[i] = g;
        t[j] = l;
        changed = true;
      }
    std::erase(t, Int(1));
  }
  std::sort(t.begin(), t.end());
  for (std::size_t i = 0; i < zeros; i++) t.push_back(0);
  return t;
}

AbGroup abgroup_from_factors(std::vector<Int> fs) {
  AbGroup g;
  g.factors = normalize_factors(std::move(fs));
  return g;
}

AbGroup direct_sum(const AbGroup& a, const AbGroup& b) {
  std::vector<Int> fs = a.factors;
  fs.insert(fs.end(), b.factors.begin(), b.factors.end());
  return abgroup_from_factors(std::move(fs));
}

std::vector<Int> AbGroup::project(const std::vector<Int>& x) const {
  check(has_projection, "AbGroup carries no projection");
  check(x.size() == ambient, "project: ambient dimension mismatch");
  std::vector<Int> y = u.apply(x);
  std::vector<Int> out;
  out.reserve(coord_rows.size());
  for (std::size_t r : coord_rows) {
    if (diag[r] == 0)
      out.push_back(y[r]);
    else {
      Int m = y[r] % diag[r];
      if (m < 0) m += diag[r];
      out.push_back(m);
    }
  }
  return out;
}

bool AbGroup::project_equal(const std::vector<Int>& x,
                            const std::vector<Int>& y) const {
  check(x.size() == y.size(), "project_equal: length mismatch");
  std::vector<Int> d(x.size());
  for (std::size_t i = 0; i < x.size(); i++) d[i] = x[i] - y[i];
  std::vector<Int> p = project(d);
  for (const Int& c : p)
    if (c != 0) return false;
  return true;
}

std::vector<Int> AbGroup::coord_moduli() const {
  check(has_projection, "AbGroup carries no projection");
  std::vector<Int> out;
  out.reserve(coord_rows.size());
  for (std::size_t r : coord_rows) out.push_back(diag[r]);
  return out;
}

std::vector<Int> AbGroup::reduced_norm(std::vector<Int> v) const {
  std::vector<Int> m = coord_moduli();
  check(v.size() == m.size(), "reduced coordinates: length mismatch");
  for (std::size_t i = 0; i < v.size(); i++)
    if (m[i] != 0) {
      v[i] %= m[i];
      if (v[i] < 0) v[i] += m[i];
    }
  return v;
}

std::vector<Int> AbGroup::reduced_add(const std::vector<Int>& x,
                                      const std::vector<Int>& y) const {
  check(x.size() == y.size(), "reduced coordinates: length mismatch");
  std::vector<Int> v(x.size());
  for (std::size_t i = 0; i < x.size(); i++) v[i] = x[i] + y[i];
  return reduced_norm(std::move(v));
}

std::vector<Int> AbGroup::reduced_sub(const std::vector<Int>& x,
                                      const std::vector<Int>& y) const {
  check(x.size() == y.size(), "reduced coordinates: length mismatch");
  std::vector<Int> v(x.size());
  for (std::size_t i = 0; i < x.size(); i++) v[i] = x[i] - y[i];
  return reduced_norm(std::move(v));
}

std::vector<Int> AbGroup::reduced_scale(const Int& c,
                                        const std::vector<Int>& x) const {
  std::vector<Int> v(x.size());
  for (std::size_t i = 0; i < x.size(); i++) v[i] = c * x[i];
  return reduced_norm(std::move(v));
}

bool AbGroup::reduced_equal(const std::vector<Int>& x,
                            const std::vector<Int>& y) const {
  return reduced_norm(x) == reduced_norm(y);
}

bool AbGroup::reduced_is_zero(const std::vector<Int>& x) const {
  for (const Int& c : reduced_norm(x))
    if (c != 0) return false;
  return true;
}

std::vector<Int> AbGroup::reduced_zero() const {
  return std::vector<Int>(coord_rows.size(), 0);
}

Int AbGroup::order() const {
  Int n = 1;
  for (const Int& f : factors) {
    if (f == 0) return 0;
    n *= f;
  }
  return n;
}

std::size_t AbGroup::free_rank() const {
  std::size_t n = 0;
  for (const Int& f : factors)
    if (f == 0) n++;
  return n;
}

std::string AbGroup::describe() const {
  if (factors.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const Int& f : factors) {
    if (!first) os << " + ";
    first = false;
    if (f == 0)
      os << "Z";
    else
      os << "Z/" << f.str();
  }
  return os.str();
}

void Echelon::insert(std::vector<Int> v) {
  check(v.size() == dim, "echelon insert: dimension mismatch");
  for (;;) {
    std::size_t p = 0;
    while (p < dim && v[p] == 0) p++;
    if (p == dim) return;  // reduced to zero
    auto it = cols.find(p);
    if (it == cols.end()) {
      if (v[p] < 0)
        for (Int& x : v) x = -x;
      cols.emplace(p, std::move(v));
      return;
    }
    std::vector<Int>& c = it->second;
    const Int& lead = c[p];
    if (v[p] % lead == 0) {
      Int q = v[p] / lead;
      for (std::size_t i = p; i < dim; i++)
        if (c[i] != 0) v[i] -= q * c[i];
    } else {
      XGcd e = xgcd(lead, v[p]);
      Int ca = lead / e.g, cb = v[p] / e.g;
      std::vector<Int> nc(dim), nv(dim);
      for (std::size_t i = p; i < dim; i++) {
        if (c[i] == 0 && v[i] == 0) continue;
        nc[i] = e.x * c[i] + e.y * v[i];
        nv[i] = -cb * c[i] + ca * v[i];
      }
      c = std::move(nc);
      v = std::move(nv);
    }
  }
}

IntMatrix Echelon::to_matrix() const {
  IntMatrix m(dim, cols.size());
  std::size_t j = 0;
  for (const auto& [p, c] : cols) {
    for (std::size_t i = 0; i < dim; i++) m.at(i, j) = c[i];
    j++;
  }
  return m;
}

namespace {

void sparse_axpy(SparseEchelon::SCol& c, const Int& s,
                 const SparseEchelon::SCol& o) {
  if (s == 0) return;
  for (const auto& [i, v] : o) {
    Int& e = c[i];
    e += s * v;
    if (e == 0) c.erase(i);
  }
}

}  // namespace

void SparseEchelon::insert(SCol c) {
  while (!c.empty()) {
    std::uint32_t row = c.rbegin()->first;
    Int v = c.rbegin()->second;
    auto it = pivots.find(row);
    if (it == pivots.end()) {
      if (v < 0)
        for (auto& [i, e] : c) e = -e;
      pivots.emplace(row, std::move(c));
      return;
    }
    const Int& p = it->second.rbegin()->second;
    if (v % p == 0) {
      sparse_axpy(c, -v / p, it->second);
    } else {
      XGcd e = xgcd(p, v);
      SCol np;
      sparse_axpy(np, e.x, it->second);
      sparse_axpy(np, e.y, c);
      SCol nc;
      sparse_axpy(nc, p / e.g, c);
      sparse_axpy(nc, -v / e.g, it->second);
      it->second = std::move(np);
      c = std::move(nc);
    }
  }
}

void SparseEchelon::insert_dense(const std::vector<Int>& v) {
  SCol c;
  for (std::size_t i = 0; i < v.size(); i++)
    if (v[i] != 0) c[static_cast<std::uint32_t>(i)] = v[i];
  insert(std::move(c));
}

IntMatrix SparseEchelon::to_matrix(std::size_t dim) const {
  IntMatrix m(dim, pivots.size());
  std::size_t j = 0;
  for (const auto& [row, col] : pivots) {
    check(row < dim, "sparse echelon: entry beyond the stated dimension");
    for (const auto& [i, v] : col) m.at(i, j) = v;
    j++;
  }
  return m;
}

AbGroup quotient_structure(std::size_t ambient_rank, const IntMatrix& relations) {
  check(relations.cols == 0 || relations.rows == ambient_rank,
        "quotient_structure: relation rows must equal ambient rank");
  IntMatrix rel = relations;
  if (rel.cols > ambient_rank) {
    SparseEchelon e;
    std::vector<Int> v(ambient_rank);
    for (std::size_t j = 0; j < rel.cols; j++) {
      for (std::size_t i = 0; i < ambient_rank; i++) v[i] = rel.at(i, j);
      e.insert_dense(v);
    }
    rel = e.to_matrix(ambient_rank);
  }
  if (rel.rows == 0) rel = IntMatrix(ambient_rank, rel.cols);

  AbGroup g;
  g.has_projection = true;
  g.ambient = ambient_rank;
  g.diag.assign(ambient_rank, 0);
  if (rel.cols == 0) {
    g.u = IntMatrix::identity(ambient_rank);
  } else {
    SmithForm s = smith_normal_form(rel);
    g.u = std::move(s.u);
    std::size_t n = std::min<std::size_t>(s.rank, ambient_rank);
    for (std::size_t i = 0; i < n; i++) g.diag[i] = s.d.at(i, i);
  }
  std::vector<Int> fs;
  for (std::size_t i = 0; i < ambient_rank; i++)
    if (g.diag[i] != 1) {
      g.coord_rows.push_back(i);
      fs.push_back(g.diag[i]);
    }
  g.factors = normalize_factors(fs);
  check(g.factors.size() == g.coord_rows.size(),
        "quotient_structure: factor/coordinate mismatch");
  return g;
}

LatticeSolver::LatticeSolver(const IntMatrix& basis)
    : dim(basis.rows), k(basis.cols) {
  for (std::size_t j = 0; j < k; j++) {
    std::vector<Int> v(dim), expr(k);
    for (std::size_t i = 0; i < dim; i++) v[i] = basis.at(i, j);
    expr[j] = 1;
    insert(std::move(v), std::move(expr));
  }
}

void LatticeSolver::insert(std::vector<Int> v, std::vector<Int> expr) {
  for (;;) {
    std::size_t p = 0;
    while (p < dim && v[p] == 0) p++;
    if (p == dim) return;
    auto it = cols.find(p);
    if (it == cols.end()) {
      cols.emplace(p, std::make_pair(std::move(v), std::move(expr)));
      return;
    }
    auto& [c, ce] = it->second;
    if (v[p] % c[p] == 0) {
      Int q = v[p] / c[p];
      for (std::size_t i = 0; i < dim; i++)
        if (c[i] != 0) v[i] -= q * c[i];
      for (std::size_t i = 0; i < k; i++)
        if (ce[i] != 0) expr[i] -= q * ce[i];
    } else {
      XGcd e = xgcd(c[p], v[p]);
      Int ca = c[p] / e.g, cb = v[p] / e.g;
      std::vector<Int> nc(dim), nce(k), nv(dim), nve(k);
      for (std::size_t i = 0; i < dim; i++) {
        nc[i] = e.x * c[i] + e.y * v[i];
        nv[i] = -cb * c[i] + ca * v[i];
      }
      for (std::size_t i = 0; i < k; i++) {
        nce[i] = e.x * ce[i] + e.y * expr[i];
        nve[i] = -cb * ce[i] + ca * expr[i];
      }
      c = std::move(nc);
      ce = std::move(nce);
      v = std::move(nv);
      expr = std::move(nve);
    }
  }
}

std::optional<std::vector<Int>> LatticeSolver::solve(
    const std::vector<Int>& target) const {
  check(target.size() == dim, "LatticeSolver: dimension mismatch");
  std::vector<Int> t = target, acc(k);
  for (std::size_t p = 0; p < dim; p++) {
    if (t[p] == 0) continue;
    auto it = cols.find(p);
    if (it == cols.end()) return std::nullopt;
    auto& [c, ce] = it->second;
    if (t[p] % c[p] != 0) return std::nullopt;
    Int q = t[p] / c[p];
    for (std::size_t i = 0; i < dim; i++)
      if (c[i] != 0) t[i] -= q * c[i];
    for (std::size_t i = 0; i < k; i++)
      if (ce[i] != 0) acc[i] += q * ce[i];
  }
  for (const Int& x : t)
    if (x != 0) return std::nullopt;
  return acc;
}

std::optional<std::vector<Int>> solve_in_lattice(const IntMatrix& basis,
                                                 const std::vector<Int>& target) {
  check(target.size() == basis.rows, "solve_in_lattice: dimension mismatch");
  return LatticeSolver(basis).solve(target);
}

namespace {

// [gens | diag(moduli != 0)]: relations of the ambient group land in the
// diagonal block, so kernels/solves against this matrix answer questions
// about the moduli group.
IntMatrix stacked_moduli(const std::vector<Int>& moduli,
                         const std::vector<std::vector<Int>>& gens) {
  std::size_t n = moduli.size(), m = gens.size(), extra = 0;
  for (const Int& d : moduli)
    if (d != 0) extra++;
  IntMatrix s(n, m + extra);
  for (std::size_t j = 0; j < m; j++) {
    check(gens[j].size() == n, "moduli helper: generator length mismatch");
    for (std::size_t i = 0; i < n; i++) s.at(i, j) = gens[j][i];
  }
  std::size_t j = m;
  for (std::size_t i = 0; i < n; i++)
    if (moduli[i] != 0) s.at(i, j++) = moduli[i];
  return s;
}

}  // namespace

IntMatrix relations_with_moduli(const std::vector<Int>& moduli,
                                const std::vector<std::vector<Int>>& gens) {
  std::size_t m = gens.size();
  if (moduli.empty()) return IntMatrix::identity(m);
  IntMatrix ker = kernel_basis(stacked_moduli(moduli, gens));
  IntMatrix rel(m, ker.cols);
  for (std::size_t j = 0; j < ker.cols; j++)
    for (std::size_t i = 0; i < m; i++) rel.at(i, j) = ker.at(i, j);
  return rel;
}

AbGroup subgroup_with_moduli(const std::vector<Int>& moduli,
                             const std::vector<std::vector<Int>>& gens) {
  return quotient_structure(gens.size(), relations_with_moduli(moduli, gens));
}

AbGroup quotient_with_moduli(const std::vector<Int>& moduli,
                             const std::vector<std::vector<Int>>& gens) {
  if (moduli.empty()) return quotient_structure(0, IntMatrix(0, 0));
  return quotient_structure(moduli.size(), stacked_moduli(moduli, gens));
}

std::optional<std::vector<Int>> express_with_moduli(
    const std::vector<Int>& moduli, const std::vector<std::vector<Int>>& gens,
    const std::vector<Int>& target) {
  check(target.size() == moduli.size(), "express_with_moduli: length mismatch");
  std::size_t m = gens.size();
  if (moduli.empty()) return std::vector<Int>(m);
  auto sol = solve_in_lattice(stacked_moduli(moduli, gens), target);
  if (!sol) return std::nullopt;
  sol->resize(m);
  return sol;
}

AbGroup subquotient_with_moduli(const std::vector<Int>& moduli,
                                const std::vector<std::vector<Int>>& outer,
                                const std::vector<std::vector<Int>>& inner) {
  std::size_t m = outer.size();
  IntMatrix rel = relations_with_moduli(moduli, outer);
  IntMatrix all(m, rel.cols + inner.size());
  for (std::size_t j = 0; j < rel.cols; j++)
    for (std::size_t i = 0; i < m; i++) all.at(i, j) = rel.at(i, j);
  if (!inner.empty()) {
    LatticeSolver solver(stacked_moduli(moduli, outer));
    for (std::size_t j = 0; j < inner.size(); j++) {
      auto sol = solver.solve(inner[j]);
      check(sol.has_value(), "subquotient_with_moduli: inner not inside outer");
      for (std::size_t i = 0; i < m; i++) all.at(i, rel.cols + j) = (*sol)[i];
    }
  }
  return quotient_structure(m, all);
}

void SparseMat::add(std::size_t i, std::size_t j, const Int& v) {
  if (v == 0) return;
  Int& e = col[j][static_cast<std::uint32_t>(i)];
  e += v;
  if (e == 0) col[j].erase(static_cast<std::uint32_t>(i));
}

namespace {

// lighter dense diagonalization: no transforms, factors only
std::pair<std::size_t, std::vector<Int>> dense_rank_factors(IntMatrix m) {
  SnfWork w{std::move(m), {}, {}, false};
  snf_run(w);
  std::size_t n = std::min(w.d.rows, w.d.cols), rank = 0;
  std::vector<Int> fs;
  for (std::size_t i = 0; i < n; i++) {
    if (w.d.at(i, i) == 0) break;
    rank++;
    fs.push_back(w.d.at(i, i));
  }
  return {rank, std::move(fs)};
}

}  // namespace

RankFactors sparse_rank_factors(SparseMat m) {
  // row id -> set of columns with a nonzero entry there
  std::vector<std::set<std::uint32_t>> row_cols(m.rows);
  for (std::size_t j = 0; j < m.cols; j++)
    for (const auto& [i, v] : m.col[j]) row_cols[i].insert((std::uint32_t)j);

  std::size_t rank = 0;
  std::vector<Int> fs;
  // bucket queue of live columns keyed by nnz
  auto col_nnz = [&](std::uint32_t j) { return m.col[j].size(); };

  for (;;) {
    // pick the live column of minimal nnz holding a unit entry; within it
    // the unit entry whose row is sparsest (fill minimization), then the
    // lowest ids
    std::uint32_t bj = 0, bi = 0;
    std::size_t best_cn = SIZE_MAX, best_rn = SIZE_MAX;
    bool found = false;
    for (std::uint32_t j = 0; j < m.cols; j++) {
      if (m.col[j].empty()) continue;
      std::size_t cn = col_nnz(j);
      if (cn > best_cn) continue;
      for (const auto& [i, v] : m.col[j]) {
        if (v != 1 && v != -1) continue;
        std::size_t rn = row_cols[i].size();
        if (cn < best_cn || (cn == best_cn && rn < best_rn)) {
          best_cn = cn;
          best_rn = rn;
          bj = j;
          bi = i;
          found = true;
        }
      }
    }
    if (!found) break;

    // eliminate: clear row bi from every other column using column ops
    std::vector<std::pair<std::uint32_t, Int>> pivot(m.col[bj].begin(),
                                                     m.col[bj].end());
    Int pv = m.col[bj].at(bi);
    std::vector<std::uint32_t> touched(row_cols[bi].begin(), row_cols[bi].end());
    for (std::uint32_t j : touched) {
      if (j == bj) continue;
      Int q = m.col[j].at(bi) * pv;  // pv in {1,-1}: q = entry / pv
      for (const auto& [i, w] : pivot) {
        Int& e = m.col[j][i];
        bool was = (e != 0);
        e -= q * w;
        if (e == 0) {
          m.col[j].erase(i);
          if (was) row_cols[i].erase(j);
        } else if (!was) {
          row_cols[i].insert(j);
        }
      }
    }
    // retire the pivot row and column
    for (const auto& [i, w] : pivot) row_cols[i].erase(bj);
    m.col[bj].clear();
    row_cols[bi].clear();
    rank++;
    fs.push_back(1);
  }

  // densify whatever is left (no unit entries remain)
  std::vector<std::uint32_t> live_rows, live_cols;
  for (std::uint32_t i = 0; i < m.rows; i++)
    if (!row_cols[i].empty()) live_rows.push_back(i);
  for (std::uint32_t j = 0; j < m.cols; j++)
    if (!m.col[j].empty()) live_cols.push_back(j);
  if (!live_cols.empty()) {
    std::map<std::uint32_t, std::size_t> rix;
    for (std::size_t i = 0; i < live_rows.size(); i++) rix[live_rows[i]] = i;
    IntMatrix dm(live_rows.size(), live_cols.size());
    for (std::size_t j = 0; j < live_cols.size(); j++)
      for (const auto& [i, v] : m.col[live_cols[j]]) dm.at(rix[i], j) = v;
    auto [r2, f2] = dense_rank_factors(std::move(dm));
    rank += r2;
    fs.insert(fs.end(), f2.begin(), f2.end());
  }

  RankFactors out;
  out.rank = rank;
  out.factors = normalize_factors(std::move(fs));
  return out;
}

}  // namespace e2hom
