#include "e2hom/complex.hpp"

#include <algorithm>

namespace e2hom {

namespace {

std::uint64_t vec_key(std::size_t n, Elem u, Elem v) {
  return static_cast<std::uint64_t>(u) * n + v;
}

// union-find with least-index roots
std::uint32_t uf_find(std::vector<std::uint32_t>& parent, std::uint32_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

void uf_unite(std::vector<std::uint32_t>& parent, std::uint32_t x,
              std::uint32_t y) {
  x = uf_find(parent, x);
  y = uf_find(parent, y);
  if (x == y) return;
  if (x < y)
    parent[y] = x;
  else
    parent[x] = y;
}

}  // namespace

// --- projective line -----------------------------------------------------------

std::uint32_t ProjLine::of_vector(const FiniteRing& r, Elem u, Elem v) const {
  auto it = index.find(vec_key(r.n, u, v));
  check(it != index.end(), "projective lookup: vector not unimodular");
  return it->second;
}

std::uint32_t ProjLine::affine(const FiniteRing& r, Elem a) const {
  return of_vector(r, r.one, a);
}

std::string ProjLine::label(const FiniteRing& r, std::uint32_t p) const {
  const auto& [u, v] = points[p];
  return "(" + r.label(u) + ":" + r.label(v) + ")";
}

ProjLine proj_points(const FiniteRing& r) {
  if (r.n > 1024) throw CapError("projective line: ring too large");
  std::size_t n = r.n;

  // multiples[a] = {x a : x in A}, as list and mask
  std::vector<std::vector<Elem>> mult_list(n);
  std::vector<std::vector<char>> mult_mask(n, std::vector<char>(n, 0));
  for (Elem a = 0; a < n; ++a)
    for (Elem x = 0; x < n; ++x) {
      Elem m = r.mul(x, a);
      if (!mult_mask[a][m]) {
        mult_mask[a][m] = 1;
        mult_list[a].push_back(m);
      }
    }

  // (u,v) spans the unit ideal iff 1 = s + t with s a multiple of u and
  // t a multiple of v
  auto unimodular = [&](Elem u, Elem v) {
    for (Elem s : mult_list[u])
      if (mult_mask[v][r.sub(r.one, s)]) return true;
    return false;
  };

  ProjLine line;
  line.index.reserve(n * n / 2);
  for (Elem u = 0; u < n; ++u)
    for (Elem v = 0; v < n; ++v) {
      if (!unimodular(u, v)) continue;
      // least scaling by a unit
      Elem cu = u, cv = v;
      for (Elem s : r.units) {
        Elem su = r.mul(s, u), sv = r.mul(s, v);
        if (su < cu || (su == cu && sv < cv)) {
          cu = su;
          cv = sv;
        }
      }
      if (cu == u && cv == v) {
        line.points.emplace_back(u, v);
        line.index.emplace(vec_key(n, u, v),
                           static_cast<std::uint32_t>(line.points.size() - 1));
      } else {
        line.index.emplace(vec_key(n, u, v), line.index.at(vec_key(n, cu, cv)));
      }
    }
  line.origin = line.index.at(vec_key(n, 0, r.one));
  line.infinity = line.index.at(vec_key(n, r.one, 0));
  return line;
}

// --- complex construction --------------------------------------------------------

std::uint32_t YComplex::apply_point(const Mat2& g, std::uint32_t p) const {
  const auto& [u, v] = line.points[p];
  Elem iu = ring.add(ring.mul(g.a, u), ring.mul(g.b, v));
  Elem iv = ring.add(ring.mul(g.c, u), ring.mul(g.d, v));
  return line.of_vector(ring, iu, iv);
}

Tuple YComplex::apply_tuple(const Mat2& g, const Tuple& t) const {
  Tuple out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = apply_point(g, t[i]);
  return out;
}

std::uint32_t YComplex::tuple_index(int n, const Tuple& t) const {
  const auto& b = basis[n];
  auto it = std::lower_bound(b.begin(), b.end(), t);
  check(it != b.end() && *it == t, "tuple_index: tuple not in basis");
  return static_cast<std::uint32_t>(it - b.begin());
}

Chain YComplex::boundary_of(int n, std::uint32_t i) const {
  return bnd[n].col[i];
}

std::string YComplex::tuple_label(int n, std::uint32_t i) const {
  std::string out = "[";
  for (std::size_t j = 0; j < basis[n][i].size(); ++j) {
    if (j) out += ",";
    out += line.label(ring, basis[n][i][j]);
  }
  return out + "]";
}

YComplex build_y_complex(const FiniteRing& r, int max_degree,
                         std::size_t simplex_cap) {
  check(max_degree >= 0 && max_degree <= 4, "build_y_complex: degree must be 0..4");
  YComplex y;
  y.ring = r;
  y.line = proj_points(r);
  y.max_degree = max_degree;

  std::size_t np = y.line.size();
  if (np > simplex_cap) throw CapError("simplex cap exceeded at degree 0");
  std::vector<char> gp(np * np, 0);
  for (std::uint32_t i = 0; i < np; ++i)
    for (std::uint32_t j = 0; j < np; ++j) {
      const auto& [a, b] = y.line.points[i];
      const auto& [c, d] = y.line.points[j];
      gp[i * np + j] = r.is_unit(r.sub(r.mul(a, d), r.mul(b, c))) ? 1 : 0;
    }

  y.basis.resize(max_degree + 1);
  for (std::uint32_t p = 0; p < np; ++p) y.basis[0].push_back({p});
  for (int n = 1; n <= max_degree; ++n) {
    for (const Tuple& t : y.basis[n - 1]) {
      for (std::uint32_t p = 0; p < np; ++p) {
        bool ok = true;
        for (std::uint32_t q : t)
          if (!gp[q * np + p]) {
            ok = false;
            break;
          }
        if (!ok) continue;
        if (y.basis[n].size() >= simplex_cap)
          throw CapError("simplex cap exceeded at degree " + std::to_string(n));
        Tuple e = t;
        e.push_back(p);
        y.basis[n].push_back(std::move(e));
      }
    }
  }

  // boundary: alternating sum of face drops
  y.bnd.resize(max_degree + 1);
  for (int n = 1; n <= max_degree; ++n) {
    SparseMat m(y.dim(n - 1), y.dim(n));
    for (std::uint32_t j = 0; j < y.dim(n); ++j) {
      const Tuple& t = y.basis[n][j];
      for (std::size_t i = 0; i <= static_cast<std::size_t>(n); ++i) {
        Tuple face;
        face.reserve(n);
        for (std::size_t k = 0; k < t.size(); ++k)
          if (k != i) face.push_back(t[k]);
        m.add(y.tuple_index(n - 1, face), j, (i % 2) ? -1 : 1);
      }
    }
    y.bnd[n] = std::move(m);
  }

  // elementary generators over an additive basis of the ring
  std::vector<Elem> all(r.n);
  for (Elem a = 0; a < r.n; ++a) all[a] = a;
  TableGroup additive = abelian_table_group(
      all, [&r](Elem a, Elem b) { return r.add(a, b); }, r.zero);
  for (Elem b : additive.gens) {
    y.action_gens.push_back(e12(r, b));
    y.action_gens.push_back(e21(r, b));
  }

  y.act.resize(max_degree + 1);
  for (int n = 0; n <= max_degree; ++n) {
    y.act[n].resize(y.action_gens.size());
    for (std::size_t g = 0; g < y.action_gens.size(); ++g) {
      auto& perm = y.act[n][g];
      perm.resize(y.dim(n));
      for (std::uint32_t i = 0; i < y.dim(n); ++i)
        perm[i] = y.tuple_index(n, y.apply_tuple(y.action_gens[g], y.basis[n][i]));
    }
  }
  return y;
}

// --- homology ------------------------------------------------------------------

AbGroup y_homology(const YComplex& y, int k) {
  check(k >= 0 && k + 1 <= y.max_degree,
        "y_homology: need boundaries through degree k+1");
  RankFactors in = sparse_rank_factors(y.bnd[k + 1]);
  std::size_t cycles;  // rank of ker of the outgoing map
  if (k == 0) {
    cycles = y.dim(0);
  } else {
    RankFactors out = sparse_rank_factors(y.bnd[k]);
    cycles = y.dim(k) - out.rank;
  }
  // the kernel is a pure sublattice, so the invariant factors of the
  // incoming map describe the torsion and the rest of the kernel is free
  std::vector<Int> fs = in.factors;
  check(in.rank <= cycles, "y_homology: image larger than kernel");
  fs.insert(fs.end(), cycles - in.rank, Int(0));
  return abgroup_from_factors(std::move(fs));
}

// --- canonicalization -------------------------------------------------------------

OrbitClass canonicalize_tuple(const YComplex& y, const UnitData& u,
                              const Tuple& t) {
  const FiniteRing& r = y.ring;
  check(t.size() >= 3 && t.size() <= 5, "canonicalize_tuple: degree must be 2..4");

  // h in SL2 sends (inf, 0) to the first two points
  const auto& [u0, u1] = y.line.points[t[0]];
  const auto& [v0, v1] = y.line.points[t[1]];
  Elem det = r.sub(r.mul(u0, v1), r.mul(u1, v0));
  check(r.is_unit(det), "canonicalize_tuple: first two points not in general position");
  Elem di = r.inv(det);
  Mat2 h{u0, r.mul(v0, di), u1, r.mul(v1, di)};
  check(m2_det(r, h) == r.one, "canonicalize_tuple: transporter not special");
  Mat2 hinv = m2_inv(r, h);

  // the remaining points become affine units c_i
  std::vector<Elem> c;
  for (std::size_t i = 2; i < t.size(); ++i) {
    const auto& [x, yy] = y.line.points[y.apply_point(hinv, t[i])];
    check(r.is_unit(x) && r.is_unit(yy),
          "canonicalize_tuple: image point not affine-unit");
    c.push_back(r.mul(yy, r.inv(x)));
  }

  OrbitClass oc;
  oc.class_index = u.square_class(c[0]);
  oc.class_rep = u.class_reps[oc.class_index];

  // scale by D(s), s^2 = c0 / rep, to land on the class representative
  Elem target = r.mul(c[0], r.inv(oc.class_rep));
  Elem s = 0;
  bool found = false;
  for (Elem cand : u.units)
    if (r.mul(cand, cand) == target) {
      s = cand;
      found = true;
      break;
    }
  check(found, "canonicalize_tuple: class discrepancy is not a square");
  oc.transporter = m2_mul(r, diag_u(r, s), hinv);

  oc.canonical = {y.line.infinity, y.line.origin, y.line.affine(r, oc.class_rep)};
  if (t.size() >= 4) {
    oc.w_param = r.mul(c[1], r.inv(c[0]));
    oc.canonical.push_back(y.line.affine(r, r.mul(oc.class_rep, oc.w_param)));
  }
  if (t.size() >= 5) {
    oc.w_param2 = r.mul(c[2], r.inv(c[0]));
    oc.canonical.push_back(y.line.affine(r, r.mul(oc.class_rep, oc.w_param2)));
  }
  check(y.apply_tuple(oc.transporter, t) == oc.canonical,
        "canonicalize_tuple: transporter does not reach the canonical form");
  return oc;
}

// --- coinvariants -------------------------------------------------------------------

Coinvariants y_coinvariants(const YComplex& y, int n, const UnitData& u) {
  check(n >= 0 && n <= y.max_degree, "y_coinvariants: degree out of range");
  std::size_t dim = y.dim(n);
  std::vector<std::uint32_t> parent(dim);
  for (std::uint32_t i = 0; i < dim; ++i) parent[i] = i;
  for (const auto& perm : y.act[n])
    for (std::uint32_t i = 0; i < dim; ++i) uf_unite(parent, i, perm[i]);

  Coinvariants co;
  co.orbit_of.resize(dim);
  std::map<std::uint32_t, std::uint32_t> root_id;  // least index -> orbit id
  for (std::uint32_t i = 0; i < dim; ++i) {
    std::uint32_t root = uf_find(parent, i);
    auto [it, fresh] = root_id.emplace(root, static_cast<std::uint32_t>(co.orbit_rep.size()));
    if (fresh) co.orbit_rep.push_back(root);  // roots are least members, i ascending
    co.orbit_of[i] = it->second;
  }
  co.structure = abgroup_from_factors(std::vector<Int>(co.orbit_rep.size(), 0));

  const FiniteRing& r = y.ring;
  for (std::uint32_t rep : co.orbit_rep) {
    if (n >= 2) {
      OrbitClass oc = canonicalize_tuple(y, u, y.basis[n][rep]);
      std::string lab = "<" + r.label(oc.class_rep) + ">[";
      if (n >= 3) lab += r.label(oc.w_param);
      if (n >= 4) lab += "," + r.label(oc.w_param2);
      co.labels.push_back(lab + "]");
    } else {
      co.labels.push_back(y.tuple_label(n, rep));
    }
  }
  return co;
}

}  // namespace e2hom
