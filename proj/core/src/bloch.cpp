#include "e2hom/bloch.hpp"

#include <algorithm>
#include <utility>

namespace e2hom {

namespace {

bool all_zero(const std::vector<Int>& v) {
  for (const Int& x : v)
    if (x != 0) return false;
  return true;
}

std::vector<Int> col_of(const IntMatrix& m, std::size_t j) {
  std::vector<Int> v(m.rows);
  for (std::size_t i = 0; i < m.rows; i++) v[i] = m.at(i, j);
  return v;
}

// Columns c of Z^(values.cols) with values * c == 0 coordinatewise modulo
// moduli (one modulus per row, 0 meaning a free Z row).
IntMatrix kernel_mod(const IntMatrix& values, const std::vector<Int>& moduli) {
  check(values.rows == moduli.size(), "kernel_mod: one modulus per row");
  std::size_t extra = 0;
  for (const Int& m : moduli)
    if (m != 0) extra++;
  IntMatrix stk(values.rows, values.cols + extra);
  for (std::size_t i = 0; i < values.rows; i++)
    for (std::size_t j = 0; j < values.cols; j++) stk.at(i, j) = values.at(i, j);
  std::size_t c = values.cols;
  for (std::size_t i = 0; i < moduli.size(); i++)
    if (moduli[i] != 0) stk.at(i, c++) = moduli[i];
  IntMatrix k = kernel_basis(stk);
  IntMatrix out(values.cols, k.cols);
  for (std::size_t i = 0; i < values.cols; i++)
    for (std::size_t j = 0; j < k.cols; j++) out.at(i, j) = k.at(i, j);
  return out;
}

// One five-term relation as (class coefficient, W argument, sign) triples:
//   [a] - [b] + <a>[b/a] - <a^-1 - 1>[(1-a^-1)/(1-b^-1)] + <1-a>[(1-a)/(1-b)].
// Assumes a, b, b/a lie in W; returns false when one of the two remaining
// arguments falls outside W.
struct FiveTermPart {
  std::size_t cls;
  Elem arg;
  int coef;
};

bool five_terms(const FiniteRing& r, const UnitData& u,
                const std::vector<std::size_t>& wpos, Elem a, Elem b,
                std::vector<FiveTermPart>& out) {
  Elem ai = r.inv(a);
  Elem ba = r.mul(b, ai);
  Elem arg4 = r.mul(r.sub(r.one, ai), r.inv(r.sub(r.one, r.inv(b))));
  Elem arg5 = r.mul(r.sub(r.one, a), r.inv(r.sub(r.one, b)));
  if (wpos[arg4] == UnitData::npos || wpos[arg5] == UnitData::npos) return false;
  out.clear();
  out.push_back({u.square_class(r.one), a, 1});
  out.push_back({u.square_class(r.one), b, -1});
  out.push_back({u.square_class(a), ba, 1});
  out.push_back({u.square_class(r.sub(ai, r.one)), arg4, -1});
  out.push_back({u.square_class(r.sub(r.one, a)), arg5, 1});
  return true;
}

std::vector<std::size_t> w_positions(const FiniteRing& r,
                                     const std::vector<Elem>& wset) {
  std::vector<std::size_t> wpos(r.n, UnitData::npos);
  for (std::size_t wi = 0; wi < wset.size(); wi++) wpos[wset[wi]] = wi;
  return wpos;
}

// Basis of ker(d2) with moderate entries: the echelon of the degree-3
// boundary columns, completed by the Smith-form kernel so the lattice is the
// full (pure) cycle lattice even when H_2 is nonzero.
IntMatrix cycle_lattice_basis(const YComplex& y, const IntMatrix& d2) {
  IntMatrix snf_ker = kernel_basis(d2);
  SparseEchelon ech;
  if (y.max_degree >= 3)
    for (const auto& col : y.bnd[3].col) {
      SparseEchelon::SCol c(col.begin(), col.end());
      ech.insert(std::move(c));
    }
  for (std::size_t j = 0; j < snf_ker.cols; j++)
    ech.insert_dense(col_of(snf_ker, j));
  return ech.to_matrix(d2.cols);
}

}  // namespace

// --- symmetric square --------------------------------------------------------------

std::vector<Int> SymSq::tensor_of(Elem a, Elem b) const {
  const std::vector<Int>& ca = table.coord(a);
  const std::vector<Int>& cb = table.coord(b);
  std::size_t k = unit_moduli.size();
  std::vector<Int> v(k * k, 0);
  for (std::size_t i = 0; i < k; i++) {
    if (ca[i] == 0) continue;
    for (std::size_t j = 0; j < k; j++) v[i * k + j] = ca[i] * cb[j];
  }
  return v;
}

std::vector<Int> SymSq::ssq_of(Elem a, Elem b) const {
  return ssq.project(tensor_of(a, b));
}

std::vector<Int> SymSq::wedge_ambient_of(Elem a, Elem b) const {
  const std::vector<Int>& ca = table.coord(a);
  const std::vector<Int>& cb = table.coord(b);
  std::vector<Int> v(wedge_slots.size(), 0);
  for (std::size_t s = 0; s < wedge_slots.size(); s++) {
    auto [i, j] = wedge_slots[s];
    v[s] = ca[i] * cb[j] - ca[j] * cb[i];
  }
  return v;
}

std::vector<Int> SymSq::wedge_of(Elem a, Elem b) const {
  return wedge.project(wedge_ambient_of(a, b));
}

std::vector<Int> SymSq::alpha(const std::vector<Int>& w) const {
  check(w.size() == wedge_slots.size(), "alpha: wedge ambient vector expected");
  std::size_t k = unit_moduli.size();
  std::vector<Int> t(k * k, 0);
  for (std::size_t s = 0; s < wedge_slots.size(); s++) {
    auto [i, j] = wedge_slots[s];
    t[i * k + j] += 2 * w[s];
  }
  return ssq.project(t);
}

SymSq symmetric_square(const FiniteRing& r, const UnitData& u) {
  SymSq s;
  s.table = abelian_table_group(
      u.units, [&r](Elem a, Elem b) { return r.mul(a, b); }, r.one);
  s.unit_moduli = s.table.structure.coord_moduli();
  std::size_t k = s.unit_moduli.size();

  s.tensor_moduli.assign(k * k, 0);
  for (std::size_t i = 0; i < k; i++)
    for (std::size_t j = 0; j < k; j++)
      s.tensor_moduli[i * k + j] = int_gcd(s.unit_moduli[i], s.unit_moduli[j]);
  std::vector<std::vector<Int>> rels;
  for (std::size_t i = 0; i < k; i++)
    for (std::size_t j = i; j < k; j++) {
      std::vector<Int> v(k * k, 0);
      v[i * k + j] += 1;
      v[j * k + i] += 1;
      rels.push_back(std::move(v));
    }
  s.ssq = quotient_with_moduli(s.tensor_moduli, rels);

  for (std::size_t i = 0; i < k; i++)
    for (std::size_t j = i + 1; j < k; j++) {
      s.wedge_slots.emplace_back(i, j);
      s.wedge_moduli.push_back(int_gcd(s.unit_moduli[i], s.unit_moduli[j]));
    }
  std::vector<std::vector<Int>> wrels;
  for (Elem t : u.mu2)
    for (Elem b : u.units) wrels.push_back(s.wedge_ambient_of(t, b));
  s.wedge = quotient_with_moduli(s.wedge_moduli, wrels);
  return s;
}

// --- presented group on symbols ------------------------------------------------------

std::size_t RpBar::symbol_index(std::size_t cls, std::size_t wi) const {
  return cls * wset.size() + wi;
}

RpBar rp_bar_presentation(const FiniteRing& r, const UnitData& u,
                          const SymSq& sq) {
  RpBar rp;
  rp.wset = w_set(r);
  rp.classes = u.class_reps.size();
  rp.symbols = rp.classes * rp.wset.size();
  std::vector<std::size_t> wpos = w_positions(r, rp.wset);

  rp.lambda1 = IntMatrix(rp.classes, rp.symbols);
  rp.lambda2.assign(rp.symbols, {});
  for (std::size_t cg = 0; cg < rp.classes; cg++)
    for (std::size_t wi = 0; wi < rp.wset.size(); wi++) {
      Elem g = u.class_reps[cg], x = rp.wset[wi], om = r.sub(r.one, x);
      std::size_t col = rp.symbol_index(cg, wi);
      rp.lambda1.at(u.square_class(r.mul(g, r.mul(x, om))), col) += 1;
      rp.lambda1.at(u.square_class(r.mul(g, x)), col) -= 1;
      rp.lambda1.at(u.square_class(r.mul(g, om)), col) -= 1;
      rp.lambda1.at(u.square_class(g), col) += 1;
      rp.lambda2[col] = sq.tensor_of(x, om);
    }

  std::vector<std::vector<Int>> kept;
  std::vector<FiveTermPart> terms;
  for (Elem a : rp.wset)
    for (Elem b : rp.wset) {
      if (wpos[r.mul(b, r.inv(a))] == UnitData::npos) continue;
      if (!five_terms(r, u, wpos, a, b, terms)) {
        rp.skipped_pairs++;
        continue;
      }
      rp.relation_pairs++;
      for (std::size_t sh = 0; sh < rp.classes; sh++) {
        std::vector<Int> v(rp.symbols, 0);
        for (const FiveTermPart& t : terms) {
          std::size_t c =
              u.square_class(r.mul(u.class_reps[sh], u.class_reps[t.cls]));
          v[rp.symbol_index(c, wpos[t.arg])] += t.coef;
        }
        kept.push_back(std::move(v));
      }
    }
  rp.relations = IntMatrix(rp.symbols, kept.size());
  for (std::size_t j = 0; j < kept.size(); j++)
    for (std::size_t i = 0; i < rp.symbols; i++) rp.relations.at(i, j) = kept[j][i];
  rp.structure = quotient_structure(rp.symbols, rp.relations);

  rp.lambda1_kills_relations = true;
  rp.lambda2_kills_relations = true;
  std::size_t tslots = sq.tensor_moduli.size();
  for (const std::vector<Int>& rel : kept) {
    if (!all_zero(rp.lambda1.apply(rel))) rp.lambda1_kills_relations = false;
    std::vector<Int> acc(tslots, 0);
    for (std::size_t s = 0; s < rp.symbols; s++) {
      if (rel[s] == 0) continue;
      for (std::size_t i = 0; i < tslots; i++) acc[i] += rel[s] * rp.lambda2[s][i];
    }
    if (!all_zero(sq.ssq.project(acc))) rp.lambda2_kills_relations = false;
  }
  return rp;
}

std::vector<Int> five_term_element(const FiniteRing& r, const UnitData& u,
                                   const RpBar& rp, Elem a, Elem b) {
  std::vector<std::size_t> wpos = w_positions(r, rp.wset);
  check(a < r.n && wpos[a] != UnitData::npos, "five_term_element: a must lie in W");
  check(b < r.n && wpos[b] != UnitData::npos, "five_term_element: b must lie in W");
  check(wpos[r.mul(b, r.inv(a))] != UnitData::npos,
        "five_term_element: b/a must lie in W");
  std::vector<FiveTermPart> terms;
  check(five_terms(r, u, wpos, a, b, terms),
        "five_term_element: a relation argument lies outside W");
  std::vector<Int> v(rp.symbols, 0);
  for (const FiveTermPart& t : terms)
    v[rp.symbol_index(t.cls, wpos[t.arg])] += t.coef;
  return v;
}

// --- geometric group -----------------------------------------------------------------

RpGeom rp_geometric(const YComplex& y, const UnitData& u) {
  check(y.max_degree >= 3, "rp_geometric: the complex must be built to degree 3");
  const FiniteRing& r = y.ring;
  std::size_t n1 = y.dim(1), n2 = y.dim(2), n3 = y.dim(3);

  IntMatrix d2(n1, n2);
  for (std::size_t j = 0; j < n2; j++)
    for (const auto& [i, v] : y.bnd[2].col[j]) d2.at(i, j) = v;

  RpGeom geo;
  geo.z_basis = cycle_lattice_basis(y, d2);
  geo.z_rank = geo.z_basis.cols;
  LatticeSolver zs(geo.z_basis);

  SparseEchelon ech;
  for (const auto& perm : y.act[2]) {
    for (std::size_t j = 0; j < geo.z_rank; j++) {
      std::vector<Int> w(n2, 0);
      for (std::size_t i = 0; i < n2; i++) {
        const Int& v = geo.z_basis.at(i, j);
        if (v != 0) w[perm[i]] = v;
      }
      auto c = zs.solve(w);
      check(c.has_value(), "rp_geometric: the cycle lattice must be action-invariant");
      (*c)[j] -= 1;
      ech.insert_dense(*c);
    }
  }
  geo.relations = ech.to_matrix(geo.z_rank);
  geo.rp = quotient_structure(geo.z_rank, geo.relations);

  // degree-2 orbits carry square-class labels via their normalized simplices
  Coinvariants c2 = y_coinvariants(y, 2, u);
  std::size_t classes = u.class_reps.size();
  check(c2.rank() == classes, "rp_geometric: degree-2 orbits must match square classes");
  std::vector<std::size_t> ocls(c2.rank(), UnitData::npos);
  for (Elem a : u.units) {
    Tuple t = {y.line.infinity, y.line.origin, y.line.affine(r, a)};
    std::uint32_t o = c2.orbit_of[y.tuple_index(2, t)];
    std::size_t ci = u.square_class(a);
    if (ocls[o] == UnitData::npos)
      ocls[o] = ci;
    else
      check(ocls[o] == ci, "rp_geometric: orbit labels must refine square classes");
  }
  for (std::size_t o = 0; o < ocls.size(); o++)
    check(ocls[o] != UnitData::npos,
          "rp_geometric: every degree-2 orbit must contain a normalized simplex");

  geo.lambda1 = IntMatrix(classes, geo.z_rank);
  for (std::size_t j = 0; j < geo.z_rank; j++)
    for (std::size_t i = 0; i < n2; i++) {
      const Int& v = geo.z_basis.at(i, j);
      if (v != 0) geo.lambda1.at(ocls[c2.orbit_of[i]], j) += v;
    }

  geo.boundaries_are_cycles = true;
  for (std::size_t s = 0; s < n3; s++) {
    std::map<std::uint32_t, Int> acc;
    for (const auto& [i, v] : y.boundary_of(3, static_cast<std::uint32_t>(s)))
      for (const auto& [i1, v1] : y.bnd[2].col[i]) {
        Int& e = acc[i1];
        e += v * v1;
        if (e == 0) acc.erase(i1);
      }
    if (!acc.empty()) {
      geo.boundaries_are_cycles = false;
      break;
    }
  }

  geo.rp1_lattice = kernel_basis(geo.lambda1);
  std::vector<std::vector<Int>> gens;
  for (std::size_t j = 0; j < geo.rp1_lattice.cols; j++)
    gens.push_back(geo.rp.project(col_of(geo.rp1_lattice, j)));
  geo.rp1 = subgroup_with_moduli(geo.rp.coord_moduli(), gens);
  return geo;
}

// --- the symbol-to-geometry map -------------------------------------------------------

EtaMap eta_map(const YComplex& y, const UnitData& u, const RpBar& rp,
               const RpGeom& geo) {
  check(y.max_degree >= 4, "eta_map: the complex must be built to degree 4");
  const FiniteRing& r = y.ring;
  std::size_t n2 = y.dim(2);
  LatticeSolver zs(geo.z_basis);

  EtaMap eta;
  eta.matrix = IntMatrix(geo.z_rank, rp.symbols);
  for (std::size_t cg = 0; cg < rp.classes; cg++)
    for (std::size_t wi = 0; wi < rp.wset.size(); wi++) {
      Elem g = u.class_reps[cg], x = rp.wset[wi];
      Tuple t = {y.line.infinity, y.line.origin, y.line.affine(r, g),
                 y.line.affine(r, r.mul(g, x))};
      std::vector<Int> w(n2, 0);
      for (const auto& [i, v] : y.boundary_of(3, y.tuple_index(3, t))) w[i] = v;
      auto c = zs.solve(w);
      check(c.has_value(), "eta_map: a canonical boundary must lie in the cycle lattice");
      std::size_t col = rp.symbol_index(cg, wi);
      for (std::size_t i = 0; i < geo.z_rank; i++) eta.matrix.at(i, col) = -(*c)[i];
    }

  eta.well_defined = true;
  for (std::size_t j = 0; j < rp.relations.cols; j++) {
    std::vector<Int> img = eta.matrix.apply(col_of(rp.relations, j));
    if (!all_zero(geo.rp.project(img))) eta.well_defined = false;
  }

  eta.lambda_match = (geo.lambda1.mul(eta.matrix) == rp.lambda1);

  std::vector<std::vector<Int>> imgs;
  for (std::size_t s = 0; s < rp.symbols; s++)
    imgs.push_back(geo.rp.project(col_of(eta.matrix, s)));
  eta.surjective = quotient_with_moduli(geo.rp.coord_moduli(), imgs).is_trivial();

  eta.h1 = y_homology(y, 1);
  eta.h2 = y_homology(y, 2);
  eta.h3 = y_homology(y, 3);
  eta.exact_below4 =
      eta.h1.is_trivial() && eta.h2.is_trivial() && eta.h3.is_trivial();
  eta.iso = eta.surjective && eta.exact_below4;
  return eta;
}

// --- refined Bloch groups --------------------------------------------------------------

RefinedBloch refined_bloch(const FiniteRing& r, const UnitData& u, const SymSq& sq,
                           const RpBar& rp, const RpGeom& geo, const EtaMap& eta) {
  check(eta.surjective, "refined_bloch: the symbol map must be onto the geometric group");
  (void)r;
  RefinedBloch rb;
  const std::vector<Int> smod = sq.ssq.coord_moduli();
  const std::vector<Int> gmod = geo.rp.coord_moduli();
  const std::vector<Int> bmod = rp.structure.coord_moduli();
  std::size_t tslots = sq.tensor_moduli.size();

  auto l2bar = [&](const std::vector<Int>& symvec) {
    std::vector<Int> acc(tslots, 0);
    for (std::size_t s = 0; s < rp.symbols; s++) {
      if (symvec[s] == 0) continue;
      for (std::size_t i = 0; i < tslots; i++) acc[i] += symvec[s] * rp.lambda2[s][i];
    }
    return sq.ssq.project(acc);
  };

  // the presented side: ker(lambda1-bar), then ker(lambda2-bar) inside it
  IntMatrix kbar = kernel_basis(rp.lambda1);
  std::vector<std::vector<Int>> p1gens;
  for (std::size_t j = 0; j < kbar.cols; j++)
    p1gens.push_back(rp.structure.project(col_of(kbar, j)));
  rb.rp1_bar = subgroup_with_moduli(bmod, p1gens);

  IntMatrix lbar(smod.size(), kbar.cols);
  for (std::size_t j = 0; j < kbar.cols; j++) {
    std::vector<Int> v = l2bar(col_of(kbar, j));
    for (std::size_t i = 0; i < smod.size(); i++) lbar.at(i, j) = v[i];
  }
  IntMatrix tbar = kernel_mod(lbar, smod);
  std::vector<std::vector<Int>> rbbar_sym, rbbar_gens;
  for (std::size_t j = 0; j < tbar.cols; j++) {
    std::vector<Int> v = kbar.apply(col_of(tbar, j));
    rbbar_gens.push_back(rp.structure.project(v));
    rbbar_sym.push_back(std::move(v));
  }
  rb.rb_bar = subgroup_with_moduli(bmod, rbbar_gens);

  // well-definedness: symbol vectors whose image dies in rp must die under
  // lambda2-bar
  IntMatrix pe(gmod.size(), rp.symbols);
  std::vector<std::vector<Int>> pe_cols;
  for (std::size_t s = 0; s < rp.symbols; s++) {
    std::vector<Int> pc = geo.rp.project(col_of(eta.matrix, s));
    for (std::size_t i = 0; i < gmod.size(); i++) pe.at(i, s) = pc[i];
    pe_cols.push_back(std::move(pc));
  }
  IntMatrix pre = kernel_mod(pe, gmod);
  rb.lambda2_well_defined = true;
  for (std::size_t j = 0; j < pre.cols; j++)
    if (!all_zero(l2bar(col_of(pre, j)))) rb.lambda2_well_defined = false;

  // a symbol section of each canonical generator of rp; surjectivity makes
  // these solvable, and well-definedness makes the induced map independent
  // of the choices
  std::vector<std::vector<Int>> section;
  for (std::size_t i = 0; i < gmod.size(); i++) {
    std::vector<Int> target(gmod.size(), 0);
    target[i] = 1;
    auto expr = express_with_moduli(gmod, pe_cols, target);
    check(expr.has_value(),
          "refined_bloch: surjectivity must provide a symbol expression");
    section.push_back(std::move(*expr));
  }

  auto l2geo = [&](const std::vector<Int>& zvec) {
    std::vector<Int> v = geo.rp.project(zvec);
    std::vector<Int> sym(rp.symbols, 0);
    for (std::size_t i = 0; i < gmod.size(); i++) {
      if (v[i] == 0) continue;
      for (std::size_t s = 0; s < rp.symbols; s++) sym[s] += v[i] * section[i][s];
    }
    return l2bar(sym);
  };

  rb.composite_matches = true;
  for (std::size_t s = 0; s < rp.symbols; s++) {
    std::vector<Int> unit(rp.symbols, 0);
    unit[s] = 1;
    if (l2geo(col_of(eta.matrix, s)) != l2bar(unit)) rb.composite_matches = false;
  }

  rb.alpha_compatible = true;
  for (Elem x : rp.wset) {
    Elem om = r.sub(r.one, x);
    std::vector<Int> lhs = sq.alpha(sq.wedge_ambient_of(x, om));
    std::vector<Int> t = sq.tensor_of(x, om);
    for (Int& e : t) e *= 2;
    if (lhs != sq.ssq.project(t)) rb.alpha_compatible = false;
  }

  // the geometric kernel inside ker(lambda1)
  IntMatrix lgeo(smod.size(), geo.rp1_lattice.cols);
  for (std::size_t j = 0; j < geo.rp1_lattice.cols; j++) {
    std::vector<Int> v = l2geo(col_of(geo.rp1_lattice, j));
    for (std::size_t i = 0; i < smod.size(); i++) lgeo.at(i, j) = v[i];
  }
  IntMatrix tg = kernel_mod(lgeo, smod);
  std::vector<std::vector<Int>> rbgens;
  for (std::size_t j = 0; j < tg.cols; j++)
    rbgens.push_back(geo.rp.project(geo.rp1_lattice.apply(col_of(tg, j))));
  rb.rb = subgroup_with_moduli(gmod, rbgens);

  std::vector<std::vector<Int>> im;
  for (const std::vector<Int>& symvec : rbbar_sym)
    im.push_back(geo.rp.project(eta.matrix.apply(symvec)));
  rb.comparison_onto = subquotient_with_moduli(gmod, rbgens, im).is_trivial();
  return rb;
}

}  // namespace e2hom
