#include "e2hom/witt.hpp"

#include <algorithm>
#include <functional>

namespace e2hom {

namespace {

bool all_zero(const std::vector<Int>& v) {
  for (const Int& x : v)
    if (x != 0) return false;
  return true;
}

void chain_acc(Chain& a, const Chain& b, const Int& c) {
  for (const auto& [i, v] : b) {
    Int& e = a[i];
    e += v * c;
    if (e == 0) a.erase(i);
  }
}

}  // namespace

// --- GrothendieckWitt methods --------------------------------------------------------

std::vector<Int> GrothendieckWitt::cycle_coords(const Chain& z) const {
  std::vector<Int> c(cycle_rank);
  Chain res = z;
  for (std::size_t j = 0; j < cycle_rank; j++) {
    auto it = z.find(nontree[j]);
    if (it == z.end()) continue;
    c[j] = it->second;
    chain_acc(res, cycle[j], -c[j]);
  }
  check(res.empty(), "cycle_coords: chain is not a kernel element");
  return c;
}

GwElem GrothendieckWitt::from_ambient(std::vector<Int> v) const {
  check(v.size() == cycle_rank, "from_ambient: wrong length");
  GwElem e;
  e.coords = structure.project(v);
  e.ambient = std::move(v);
  return e;
}

GwElem GrothendieckWitt::element(const Chain& z) const {
  return from_ambient(cycle_coords(z));
}

Int GrothendieckWitt::augmentation(const GwElem& e) const {
  check(e.ambient.size() == cycle_rank, "augmentation: wrong length");
  Int s = 0;
  for (std::size_t j = 0; j < cycle_rank; j++) s += e.ambient[j] * eps[j];
  return s;
}

bool GrothendieckWitt::equal(const GwElem& a, const GwElem& b) const {
  return structure.reduced_equal(a.coords, b.coords);
}

GwElem GrothendieckWitt::pontryagin(Elem a, Elem b) const {
  check(ring.is_unit(a) && ring.is_unit(b), "pontryagin: parameters must be units");
  std::vector<Int> v = cls.at(ring.mul(a, b)).ambient;
  const std::vector<Int>& va = cls.at(a).ambient;
  const std::vector<Int>& vb = cls.at(b).ambient;
  for (std::size_t j = 0; j < cycle_rank; j++) v[j] -= va[j] + vb[j];
  return from_ambient(std::move(v));
}

// --- construction ---------------------------------------------------------------------

GrothendieckWitt grothendieck_witt(const YComplex& y) {
  check(y.max_degree >= 2, "grothendieck_witt: complex needs degree 2");
  const FiniteRing& r = y.ring;
  GrothendieckWitt gw;
  gw.ring = r;
  std::size_t np = y.dim(0), ne = y.dim(1);
  check(np >= 2 && ne >= 1, "grothendieck_witt: degenerate complex");

  // spanning tree of the general-position graph, BFS from vertex 0
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> adj(np);
  for (std::uint32_t e = 0; e < ne; e++)
    adj[y.basis[1][e][0]].push_back({y.basis[1][e][1], e});
  std::vector<char> seen(np, 0), is_tree(ne, 0);
  std::vector<Chain> path(np);  // signed tree chain from the root
  std::vector<std::uint32_t> order{0};
  seen[0] = 1;
  for (std::size_t qi = 0; qi < order.size(); qi++) {
    std::uint32_t u = order[qi];
    for (auto [v, e] : adj[u])
      if (!seen[v]) {
        seen[v] = 1;
        is_tree[e] = 1;
        path[v] = path[u];
        path[v][e] = 1;
        order.push_back(v);
      }
  }
  for (char s : seen) check(s, "general-position graph must be connected");

  gw.edge_coord.assign(ne, GrothendieckWitt::npos);
  for (std::uint32_t e = 0; e < ne; e++)
    if (!is_tree[e]) {
      gw.edge_coord[e] = static_cast<std::uint32_t>(gw.nontree.size());
      gw.nontree.push_back(e);
    }
  gw.cycle_rank = gw.nontree.size();
  gw.cycle.resize(gw.cycle_rank);
  gw.eps.resize(gw.cycle_rank);
  for (std::size_t j = 0; j < gw.cycle_rank; j++) {
    std::uint32_t e = gw.nontree[j];
    Chain c;
    c[e] = 1;
    chain_acc(c, path[y.basis[1][e][1]], -1);
    chain_acc(c, path[y.basis[1][e][0]], 1);
    Int s = 0;
    for (const auto& [i, v] : c) s += v;
    gw.eps[j] = s;
    gw.cycle[j] = std::move(c);
  }

  // the augmentation target: degree-1 coinvariants must be Z (one orbit)
  {
    std::vector<std::uint32_t> root(ne);
    for (std::uint32_t i = 0; i < ne; i++) root[i] = i;
    std::function<std::uint32_t(std::uint32_t)> find =
        [&](std::uint32_t x) -> std::uint32_t {
      while (root[x] != x) x = root[x] = root[root[x]];
      return x;
    };
    for (const auto& perm : y.act[1])
      for (std::uint32_t i = 0; i < ne; i++) {
        std::uint32_t a = find(i), b = find(perm[i]);
        if (a != b) root[std::max(a, b)] = std::min(a, b);
      }
    std::size_t orbits = 0;
    for (std::uint32_t i = 0; i < ne; i++)
      if (find(i) == i) orbits++;
    check(orbits == 1, "degree-1 coinvariants must have rank one");
  }

  // coinvariant relations, echelon-compressed on the fly
  SparseEchelon ech;
  for (const auto& perm : y.act[1])
    for (std::size_t j = 0; j < gw.cycle_rank; j++) {
      Chain sc;
      for (const auto& [e, v] : gw.cycle[j]) sc[perm[e]] = v;
      std::vector<Int> rel = gw.cycle_coords(sc);
      rel[j] -= 1;
      ech.insert_dense(rel);
    }
  IntMatrix rel = ech.to_matrix(gw.cycle_rank);
  for (std::size_t c = 0; c < rel.cols; c++) {
    Int s = 0;
    for (std::size_t j = 0; j < gw.cycle_rank; j++) s += rel.at(j, c) * gw.eps[j];
    check(s == 0, "augmentation must vanish on coinvariant relations");
  }
  gw.structure = quotient_structure(gw.cycle_rank, rel);

  Int g = 0;
  for (const Int& e : gw.eps) g = int_gcd(g, e);
  gw.eps_onto = (g == 1);

  // unit classes
  UnitData u = unit_data(r);
  gw.reps = u.class_reps;
  std::uint32_t inf = y.line.infinity, org = y.line.origin;
  auto triangle = [&](Elem a) {
    return y.boundary_of(2, y.tuple_index(2, {inf, org, y.line.affine(r, a)}));
  };
  for (Elem rep : gw.reps) gw.beta.emplace(rep, gw.element(triangle(rep)));
  Chain t1 = triangle(r.one);
  for (Elem a : u.units) {
    Chain c = triangle(a);
    chain_acc(c, t1, -1);
    gw.cls.emplace(a, gw.element(c));
  }
  for (Elem a : u.units) {
    check(gw.equal(gw.cls.at(a), gw.cls.at(u.class_reps[u.square_class(a)])),
          "unit classes must be constant on square classes");
    check(gw.augmentation(gw.cls.at(a)) == 0,
          "unit classes must have augmentation zero");
  }
  return gw;
}

// --- augmentation ideal ----------------------------------------------------------------

AugIdeal augmentation_ideal(const GrothendieckWitt& gw) {
  const AbGroup& s = gw.structure;
  std::vector<Int> moduli = s.coord_moduli();
  std::size_t nc = moduli.size();
  std::vector<std::size_t> freeslot;
  for (std::size_t i = 0; i < nc; i++)
    if (moduli[i] == 0) freeslot.push_back(i);

  // the value of the augmentation on each free canonical generator, read off
  // by solving against the images of the ambient basis vectors
  IntMatrix sys(gw.cycle_rank, freeslot.size());
  std::vector<Int> tgt(gw.cycle_rank);
  for (std::size_t t = 0; t < gw.cycle_rank; t++) {
    std::vector<Int> amb(gw.cycle_rank);
    amb[t] = 1;
    std::vector<Int> co = s.project(amb);
    for (std::size_t fi = 0; fi < freeslot.size(); fi++)
      sys.at(t, fi) = co[freeslot[fi]];
    tgt[t] = gw.eps[t];
  }
  auto phi = solve_in_lattice(sys, tgt);
  check(phi.has_value(), "augmentation must factor through the free quotient");

  AugIdeal ideal;
  for (std::size_t i = 0; i < nc; i++)
    if (moduli[i] != 0) {
      std::vector<Int> e(nc);
      e[i] = 1;
      ideal.gens.push_back(std::move(e));
    }
  IntMatrix pm(1, freeslot.size());
  for (std::size_t fi = 0; fi < freeslot.size(); fi++) pm.at(0, fi) = (*phi)[fi];
  IntMatrix ker = kernel_basis(pm);
  for (std::size_t j = 0; j < ker.cols; j++) {
    std::vector<Int> v(nc);
    for (std::size_t fi = 0; fi < freeslot.size(); fi++)
      v[freeslot[fi]] = ker.at(fi, j);
    ideal.gens.push_back(std::move(v));
  }
  ideal.structure = subgroup_with_moduli(moduli, ideal.gens);
  return ideal;
}

// --- Borel context -----------------------------------------------------------------------

std::vector<Int> BorelContext::concat(const std::vector<Int>& g,
                                      const std::vector<Int>& x) const {
  std::vector<Int> v = g;
  v.insert(v.end(), x.begin(), x.end());
  return v;
}

std::vector<Int> BorelContext::reduce(std::vector<Int> v) const {
  check(v.size() == moduli.size(), "reduce: wrong length");
  for (std::size_t i = 0; i < v.size(); i++)
    if (moduli[i] != 0) {
      v[i] %= moduli[i];
      if (v[i] < 0) v[i] += moduli[i];
    }
  return v;
}

std::vector<Int> BorelContext::zero() const {
  return std::vector<Int>(moduli.size());
}

std::vector<Int> BorelContext::phi(const Mat2& m) const {
  const FiniteRing& r = ring;
  check(m.c == r.zero, "phi: matrix must be upper triangular");
  check(r.is_unit(m.a) && m.d == r.inv(m.a), "phi: matrix not in the Borel subgroup");
  return reduce(concat(ga.coord(m.a), ax.cls[r.mul(r.inv(m.a), m.b)]));
}

std::vector<Int> BorelContext::d2(Elem a) const {
  const FiniteRing& r = ring;
  check(r.is_unit(a), "d2: parameter must be a unit");
  std::vector<Int> v = concat(ga.coord(a), ax.cls[r.sub(r.one, a)]);
  for (Int& x : v) x *= 3;
  return reduce(std::move(v));
}

BorelContext borel_context(const FiniteRing& r) {
  BorelContext c;
  c.ring = r;
  c.units = unit_data(r);
  const FiniteRing& rr = c.ring;
  c.ga = abelian_table_group(
      c.units.units, [&rr](Elem a, Elem b) { return rr.mul(a, b); }, rr.one,
      c.units.unit_squares);
  c.ax = a_lower(r);
  c.moduli = c.ga.structure.coord_moduli();
  std::vector<Int> am = c.ax.structure.coord_moduli();
  c.moduli.insert(c.moduli.end(), am.begin(), am.end());
  c.borel = borel_group(r);
  c.bab = abelianize(c.borel);
  return c;
}

// --- first-page differentials -------------------------------------------------------------

D1Report d1_differentials(const BorelContext& ctx, const YComplex* y) {
  const FiniteRing& r = ctx.ring;
  D1Report rep;
  std::vector<Int> bmod = ctx.bab.structure.coord_moduli();
  std::vector<std::vector<Int>> images;
  for (Elem a : ctx.units.units) {
    std::vector<Int> co = ctx.bab.coord_of(ctx.borel.of(diag_u(r, r.mul(a, a))));
    if (all_zero(co)) rep.kernel.push_back(a);
    images.push_back(std::move(co));
  }
  rep.kernel_is_mu2 = (rep.kernel == ctx.units.mu2);
  rep.cokernel = quotient_with_moduli(bmod, images);
  rep.cokernel_matches =
      rep.cokernel.same_factors(direct_sum(ctx.ga.structure, ctx.ax.structure));

  if (y != nullptr) {
    rep.row0_checked = true;
    Coinvariants c0 = y_coinvariants(*y, 0, ctx.units);
    Coinvariants c1 = y_coinvariants(*y, 1, ctx.units);
    Coinvariants c2 = y_coinvariants(*y, 2, ctx.units);
    bool first = true;
    for (std::size_t o = 0; o < c1.rank(); o++) {
      std::map<std::uint32_t, Int> acc;
      for (const auto& [i, c] : y->boundary_of(1, c1.orbit_rep[o]))
        acc[c0.orbit_of[i]] += c;
      for (const auto& [k, v] : acc) first = first && (v == 0);
    }
    rep.row0_first_zero = first;
    bool ones = true;
    for (std::size_t o = 0; o < c2.rank(); o++) {
      Int total = 0;
      for (const auto& [i, c] : y->boundary_of(2, c2.orbit_rep[o])) total += c;
      ones = ones && (total == 1);
    }
    rep.row0_second_ones = ones;
  }
  return rep;
}

std::vector<Int> d2_differential(const BorelContext& ctx, Elem a) {
  return ctx.d2(a);
}

// --- the proof replay ------------------------------------------------------------------

D2Replay replay_d2_proof(const BorelContext& ctx, const YComplex& y,
                         const GroupTable& e2, Elem a) {
  const FiniteRing& r = ctx.ring;
  check(r.is_unit(a), "replay_d2_proof: parameter must be a unit");
  check(y.max_degree >= 2, "replay_d2_proof: complex needs degree 2");
  Elem ai = r.inv(a);
  std::uint32_t inf = y.line.infinity, org = y.line.origin;
  std::uint32_t pair01 = y.tuple_index(1, {inf, org});
  std::uint32_t yinf = y.tuple_index(0, {inf});

  Mat2 w = w_mat(r);
  Mat2 ga_i = m2_inv(r, g_mat(r, a)), g1_i = m2_inv(r, g_mat(r, r.one));
  Mat2 ha = h_mat(r, a), h1 = h_mat(r, r.one), hai = h_mat(r, ai);
  Mat2 ha_i = m2_inv(r, ha), h1_i = m2_inv(r, h1), hai_i = m2_inv(r, hai);
  Mat2 da_i = diag_u(r, ai);
  Mat2 mkey = m2_mul(r, da_i, hai_i);  // D(a)^-1 h_{a^-1}^-1

  D2Replay rep;

  // Gamma_a (x) (inf,0) and its lift identity
  TensorChain big = tensor_chain(1, 1);
  auto addl = [&](const Mat2& m, int c) {
    tensor_add(big, e2, {e2.of(m)}, pair01, c);
  };
  addl(ga_i, 1);
  addl(ha_i, -1);
  addl(g1_i, -1);
  addl(h1_i, 1);
  Chain xa = y.boundary_of(2, y.tuple_index(2, {inf, org, y.line.affine(r, a)}));
  {
    Chain x1 =
        y.boundary_of(2, y.tuple_index(2, {inf, org, y.line.affine(r, r.one)}));
    for (const auto& [i, c] : x1) {
      Int& e = xa[i];
      e -= c;
      if (e == 0) xa.erase(i);
    }
  }
  rep.lift_ok = tensor_equal(tensor_bar_boundary(e2, y, big),
                             tensor_from_y(e2, 1, xa));

  TensorChain v = tensor_y_boundary(e2, y, big);
  auto add2 = [&](TensorChain& t, const Mat2& m1, const Mat2& m2v, int c) {
    tensor_add(t, e2, {e2.of(m1), e2.of(m2v)}, yinf, c);
  };
  auto adde = [&](TensorChain& t, const Mat2& m, int c) {
    tensor_add(t, e2, {e2.of(m)}, yinf, c);
  };

  // first null element
  TensorChain n1 = tensor_chain(2, 0);
  add2(n1, w, ha_i, 1);
  add2(n1, w, ga_i, -1);
  add2(n1, w, g1_i, 1);
  add2(n1, w, h1_i, -1);
  tensor_acc(v, e2, tensor_bar_boundary(e2, y, n1), 1);
  TensorChain s1 = tensor_chain(1, 0);
  adde(s1, m2_mul(r, w, ga_i), 1);
  adde(s1, m2_mul(r, w, ha_i), -1);
  adde(s1, m2_mul(r, w, g1_i), -1);
  adde(s1, m2_mul(r, w, h1_i), 1);
  adde(s1, ga_i, -1);
  adde(s1, ha_i, 1);
  adde(s1, g1_i, 1);
  adde(s1, h1_i, -1);
  rep.null1_ok = tensor_equal(v, s1);

  // second null element
  TensorChain n2 = tensor_chain(2, 0);
  add2(n2, mkey, m2_mul(r, w, ha_i), 1);
  add2(n2, h1_i, m2_mul(r, w, h1_i), -1);
  tensor_acc(v, e2, tensor_bar_boundary(e2, y, n2), 1);
  TensorChain s2 = tensor_chain(1, 0);
  adde(s2, mkey, 1);
  adde(s2, h1_i, -1);
  adde(s2, ga_i, -1);
  adde(s2, ha_i, 1);
  adde(s2, g1_i, 1);
  adde(s2, h1_i, -1);
  rep.null2_ok = tensor_equal(v, s2);

  // third null element
  TensorChain n3 = tensor_chain(2, 0);
  Mat2 wneg = m2_neg(r, w);
  add2(n3, h1, wneg, 1);
  add2(n3, hai, wneg, -1);
  tensor_acc(v, e2, tensor_bar_boundary(e2, y, n3), 1);
  TensorChain s3 = tensor_chain(1, 0);
  adde(s3, mkey, 1);
  adde(s3, h1_i, -1);
  adde(s3, ha_i, 1);
  adde(s3, h1_i, -1);
  adde(s3, hai, -1);
  adde(s3, h1, 1);
  rep.null3_ok = tensor_equal(v, s3);

  // surviving chain lies over (inf) in the Borel subgroup
  bool in_b = true;
  std::vector<std::pair<Mat2, Int>> entries;
  for (const auto& [key, c] : v.terms) {
    const Mat2& m = e2.elems[key.first[0]];
    if (key.second != yinf || m.c != r.zero)
      in_b = false;
    else
      entries.push_back({m, c});
  }
  rep.in_borel = in_b;

  // closed matrix: D(a)^-1 E12(3 - 2a - a^-1)
  Elem xcoef = r.sub(r.int_elem(3), r.add(r.add(a, a), ai));
  Mat2 closed_m = m2_mul(r, da_i, e12(r, xcoef));
  Mat2 prod = mkey;                              // [mkey]
  prod = m2_mul(r, prod, m2_mul(r, h1, h1));     // -2 [h_1^-1]
  prod = m2_mul(r, prod, ha_i);                  // +  [h_a^-1]
  prod = m2_mul(r, prod, m2_inv(r, hai));        // -  [h_{a^-1}]
  prod = m2_mul(r, prod, h1);                    // +  [h_1]
  rep.product_ok = (prod == closed_m);

  if (in_b) {
    const AbGroup& bs = ctx.bab.structure;
    std::vector<Int> absum(bs.factors.size());
    std::vector<Int> val = ctx.zero();
    for (const auto& [m, c] : entries) {
      absum = bs.reduced_add(
          absum, bs.reduced_scale(c, ctx.bab.coord_of(ctx.borel.of(m))));
      std::vector<Int> p = ctx.phi(m);
      for (Int& x : p) x *= c;
      for (std::size_t i = 0; i < val.size(); i++) val[i] += p[i];
      val = ctx.reduce(std::move(val));
    }
    rep.abelian_ok =
        (absum == ctx.bab.coord_of(ctx.borel.of(closed_m)));
    rep.value = ctx.reduce(std::move(val));
    rep.closed = ctx.d2(a);
    rep.matches = (rep.value == rep.closed) && (ctx.phi(closed_m) == rep.closed);
  }
  return rep;
}

// --- I^2 ----------------------------------------------------------------------------------

ISquared i_squared(const BorelContext& ctx, const GrothendieckWitt& gw) {
  const FiniteRing& r = ctx.ring;
  check(local_decomposition(r).universal,
        "i_squared: ring must be universal for rank-two elementary groups");
  ISquared out;
  std::vector<Int> gmod = gw.structure.coord_moduli();
  std::size_t one_cl = ctx.units.square_class(r.one);
  for (std::size_t ci = 0; ci < gw.reps.size(); ci++)
    if (ci != one_cl) out.reps.push_back(gw.reps[ci]);
  std::vector<std::vector<Int>> gens;
  for (Elem rep : out.reps) gens.push_back(gw.cls.at(rep).coords);
  std::size_t m = gens.size();

  AugIdeal ideal = augmentation_ideal(gw);
  out.span_equals_ideal =
      subquotient_with_moduli(gmod, ideal.gens, gens).is_trivial();

  // the closed form must be constant on relations between the classes
  IntMatrix reli = relations_with_moduli(gmod, gens);
  std::vector<std::vector<Int>> d2cols;
  for (Elem rep : out.reps) d2cols.push_back(ctx.d2(rep));
  std::size_t tn = ctx.moduli.size();
  for (std::size_t c = 0; c < reli.cols; c++) {
    std::vector<Int> img(tn);
    for (std::size_t i = 0; i < m; i++)
      for (std::size_t t = 0; t < tn; t++) img[t] += reli.at(i, c) * d2cols[i][t];
    check(all_zero(ctx.reduce(std::move(img))),
          "i_squared: closed form must kill class relations");
  }

  // kernel lattice of the induced map on the class span
  std::size_t extra = 0;
  for (const Int& d : ctx.moduli)
    if (d != 0) extra++;
  IntMatrix stk(tn, m + extra);
  for (std::size_t j = 0; j < m; j++)
    for (std::size_t t = 0; t < tn; t++) stk.at(t, j) = d2cols[j][t];
  {
    std::size_t j = m;
    for (std::size_t t = 0; t < tn; t++)
      if (ctx.moduli[t] != 0) stk.at(t, j++) = ctx.moduli[t];
  }
  IntMatrix ker = kernel_basis(stk);
  out.combo = IntMatrix(m, ker.cols);
  for (std::size_t j = 0; j < ker.cols; j++)
    for (std::size_t i = 0; i < m; i++) out.combo.at(i, j) = ker.at(i, j);

  for (std::size_t j = 0; j < ker.cols; j++) {
    std::vector<Int> amb(gw.cycle_rank);
    for (std::size_t i = 0; i < m; i++) {
      const std::vector<Int>& ca = gw.cls.at(out.reps[i]).ambient;
      for (std::size_t t = 0; t < gw.cycle_rank; t++)
        amb[t] += out.combo.at(i, j) * ca[t];
    }
    GwElem e = gw.from_ambient(std::move(amb));
    check(gw.augmentation(e) == 0, "i_squared: generator must lie in I(A)");
    out.gens.push_back(e.coords);
  }
  out.structure = subgroup_with_moduli(gmod, out.gens);
  return out;
}

PontryaginReport pontryagin_product(const BorelContext& ctx,
                                    const GrothendieckWitt& gw, Elem a, Elem b) {
  const FiniteRing& r = ctx.ring;
  check(r.is_unit(a) && r.is_unit(b),
        "pontryagin_product: parameters must be units");
  PontryaginReport out;
  out.value = gw.pontryagin(a, b);
  out.eps_zero = (gw.augmentation(out.value) == 0);
  check(out.eps_zero, "pontryagin_product: augmentation must vanish");
  if (r.is_unit(r.int_elem(2)) || ctx.ax.structure.is_trivial()) {
    out.kernel_checked = true;
    std::vector<Int> img = ctx.d2(r.mul(a, b));
    const std::vector<Int> da = ctx.d2(a), db = ctx.d2(b);
    for (std::size_t i = 0; i < img.size(); i++) img[i] -= da[i] + db[i];
    out.in_kernel = all_zero(ctx.reduce(std::move(img)));
    check(out.in_kernel,
          "pontryagin_product: image must lie in the kernel of the second "
          "differential");
  }
  return out;
}

// --- H1 comparison --------------------------------------------------------------------

H1Compare h1_compare(const BorelContext& ctx, const GroupTable& e2) {
  const FiniteRing& r = ctx.ring;
  H1Compare out;
  AddQuotient am = m_subgroup(r);
  out.a_mod_m = am.structure;
  Abelianized ab = abelianize(e2);
  out.h1 = ab.structure;
  out.universal = local_decomposition(r).universal;

  std::vector<Int> hmod = ab.structure.coord_moduli();
  bool def = true;
  for (Elem mg : am.subgroup.gens)
    def = def && all_zero(ab.coord_of(e2.of(e12(r, mg))));
  out.map_defined = def;
  std::vector<std::vector<Int>> e12cls;
  for (Elem x = 0; x < r.n; x++) e12cls.push_back(ab.coord_of(e2.of(e12(r, x))));
  out.e12_generates = quotient_with_moduli(hmod, e12cls).is_trivial();
  out.isomorphic = out.map_defined && out.e12_generates &&
                   am.structure.order() == ab.structure.order();

  if (out.universal) {
    out.sequence_checked = true;
    std::vector<std::vector<Int>> rels;
    for (Elem rep : ctx.units.class_reps) rels.push_back(ctx.d2(rep));
    AbGroup q = quotient_with_moduli(ctx.moduli, rels);
    bool ok = q.same_factors(am.structure);
    std::vector<Int> gzero(ctx.ga.structure.factors.size());
    // every M generator dies under a -> (<1>, class of a)
    for (Elem mg : am.subgroup.gens)
      ok = ok && q.reduced_is_zero(q.project(ctx.concat(gzero, ctx.ax.cls[mg])));
    // the inverse (b, a) -> a - 3b + 3 composes to the identity on the quotient
    for (Elem b : ctx.units.units)
      for (Elem av = 0; av < r.n; av++) {
        std::vector<Int> qc =
            q.project(ctx.concat(ctx.ga.coord(b), ctx.ax.cls[av]));
        Elem e = r.sub(r.add(av, r.int_elem(3)), r.mul(r.int_elem(3), b));
        ok = ok && (q.project(ctx.concat(gzero, ctx.ax.cls[e])) == qc);
      }
    out.sequence_ok = ok;
  }
  return out;
}

// --- symbolic side and the comparison ---------------------------------------------------

BarWitt bar_witt_suite(const FiniteRing& r, const UnitData& u,
                       const GrothendieckWitt* gw) {
  BarWitt out;
  out.reps = u.class_reps;
  std::size_t g = out.reps.size();
  auto idx = [&](Elem a) { return u.square_class(a); };

  std::vector<Elem> wset = w_set(r);
  IntMatrix rm(g, wset.size());
  for (std::size_t c = 0; c < wset.size(); c++) {
    Elem a = wset[c], b = r.sub(r.one, a);
    rm.at(idx(r.mul(a, b)), c) += 1;
    rm.at(idx(a), c) -= 1;
    rm.at(idx(b), c) -= 1;
    rm.at(idx(r.one), c) += 1;
  }
  out.gw_bar = quotient_structure(g, rm);
  std::vector<Int> bmod = out.gw_bar.coord_moduli();
  std::size_t one_cl = idx(r.one);

  std::vector<std::vector<Int>> igens, i2gens;
  for (std::size_t ci = 0; ci < g; ci++) {
    if (ci == one_cl) continue;
    std::vector<Int> e(g);
    e[ci] += 1;
    e[one_cl] -= 1;
    igens.push_back(out.gw_bar.project(e));
  }
  for (std::size_t ci = 0; ci < g; ci++)
    for (std::size_t cj = ci; cj < g; cj++) {
      if (ci == one_cl || cj == one_cl) continue;
      std::vector<Int> e(g);
      e[idx(r.mul(out.reps[ci], out.reps[cj]))] += 1;
      e[ci] -= 1;
      e[cj] -= 1;
      e[one_cl] += 1;
      i2gens.push_back(out.gw_bar.project(e));
    }
  out.ibar = subgroup_with_moduli(bmod, igens);
  out.ibar2 = subgroup_with_moduli(bmod, i2gens);
  out.ibar_mod_ibar2 = subquotient_with_moduli(bmod, igens, i2gens);
  out.matches_ga = out.ibar_mod_ibar2.same_factors(u.square_classes);

  if (gw != nullptr) {
    out.compared = true;
    auto rep_of = [&](Elem a) { return u.class_reps[idx(a)]; };
    bool wd = true;
    for (Elem a : wset) {
      Elem b = r.sub(r.one, a);
      std::vector<Int> amb = gw->beta.at(rep_of(r.mul(a, b))).ambient;
      const std::vector<Int>& va = gw->beta.at(rep_of(a)).ambient;
      const std::vector<Int>& vb = gw->beta.at(rep_of(b)).ambient;
      const std::vector<Int>& v1 = gw->beta.at(rep_of(r.one)).ambient;
      for (std::size_t j = 0; j < gw->cycle_rank; j++)
        amb[j] += v1[j] - va[j] - vb[j];
      wd = wd && gw->structure.reduced_is_zero(gw->structure.project(amb));
    }
    out.well_defined = wd;
    std::vector<std::vector<Int>> bgens;
    for (Elem rep : gw->reps) bgens.push_back(gw->beta.at(rep).coords);
    out.onto =
        quotient_with_moduli(gw->structure.coord_moduli(), bgens).is_trivial();
    out.bijective = wd && out.onto && out.gw_bar.same_factors(gw->structure);
  }
  return out;
}

// --- exactness at I(A) --------------------------------------------------------------------

IIExactness ii_exactness(const GrothendieckWitt& gw) {
  IIExactness out;
  std::vector<Int> moduli = gw.structure.coord_moduli();
  std::vector<std::vector<Int>> betas;
  for (Elem rep : gw.reps) betas.push_back(gw.beta.at(rep).coords);
  out.h1_coinv = quotient_with_moduli(moduli, betas);
  AugIdeal ideal = augmentation_ideal(gw);
  std::vector<std::vector<Int>> clsgens;
  for (Elem rep : gw.reps) clsgens.push_back(gw.cls.at(rep).coords);
  out.coker = subquotient_with_moduli(moduli, ideal.gens, clsgens);
  out.match = out.coker.same_factors(out.h1_coinv);
  return out;
}

}  // namespace e2hom
