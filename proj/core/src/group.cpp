#include "e2hom/group.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace e2hom {

// --- matrices -----------------------------------------------------------------

Mat2 m2_identity(const FiniteRing& r) { return {r.one, r.zero, r.zero, r.one}; }

Mat2 m2_mul(const FiniteRing& r, const Mat2& x, const Mat2& y) {
  return {r.add(r.mul(x.a, y.a), r.mul(x.b, y.c)),
          r.add(r.mul(x.a, y.b), r.mul(x.b, y.d)),
          r.add(r.mul(x.c, y.a), r.mul(x.d, y.c)),
          r.add(r.mul(x.c, y.b), r.mul(x.d, y.d))};
}

Elem m2_det(const FiniteRing& r, const Mat2& m) {
  return r.sub(r.mul(m.a, m.d), r.mul(m.b, m.c));
}

Mat2 m2_inv(const FiniteRing& r, const Mat2& m) {
  Elem u = m2_det(r, m);
  check(r.is_unit(u), "matrix inverse: determinant is not a unit");
  Elem ui = r.inv(u);
  return {r.mul(ui, m.d), r.mul(ui, r.neg(m.b)), r.mul(ui, r.neg(m.c)),
          r.mul(ui, m.a)};
}

Mat2 m2_neg(const FiniteRing& r, const Mat2& m) {
  return {r.neg(m.a), r.neg(m.b), r.neg(m.c), r.neg(m.d)};
}

std::string m2_show(const FiniteRing& r, const Mat2& m) {
  std::ostringstream os;
  os << "[[" << r.label(m.a) << "," << r.label(m.b) << "],[" << r.label(m.c)
     << "," << r.label(m.d) << "]]";
  return os.str();
}

Mat2 e12(const FiniteRing& r, Elem x) { return {r.one, x, r.zero, r.one}; }
Mat2 e21(const FiniteRing& r, Elem x) { return {r.one, r.zero, x, r.one}; }

Mat2 diag_u(const FiniteRing& r, Elem a) {
  return {a, r.zero, r.zero, r.inv(a)};
}

Mat2 upper(const FiniteRing& r, Elem a, Elem x) {
  return {a, x, r.zero, r.inv(a)};
}

Mat2 w_mat(const FiniteRing& r) {
  return {r.zero, r.one, r.neg(r.one), r.zero};
}

Mat2 g_mat(const FiniteRing& r, Elem z) {
  check(r.is_unit(z), "g matrix needs a unit parameter");
  return {r.zero, r.one, r.neg(r.one), z};
}

Mat2 h_mat(const FiniteRing& r, Elem z) { return e12(r, r.inv(z)); }

// --- group tables ----------------------------------------------------------------

std::uint64_t GroupTable::key(const Mat2& m) const {
  std::uint64_t n = ring.n;
  return ((std::uint64_t(m.a) * n + m.b) * n + m.c) * n + m.d;
}

std::uint32_t GroupTable::of(const Mat2& m) const {
  auto it = index.find(key(m));
  check(it != index.end(), "matrix not in group table");
  return it->second;
}

std::uint32_t GroupTable::mul(std::uint32_t i, std::uint32_t j) const {
  return of(m2_mul(ring, elems[i], elems[j]));
}

std::uint32_t GroupTable::inv(std::uint32_t i) const {
  return of(m2_inv(ring, elems[i]));
}

std::uint32_t GroupTable::conj(std::uint32_t g, std::uint32_t x) const {
  const Mat2& gm = elems[g];
  return of(m2_mul(ring, m2_mul(ring, m2_inv(ring, gm), elems[x]), gm));
}

std::vector<std::uint32_t> GroupTable::word(std::uint32_t i) const {
  check(!pred.empty(), "no generator words recorded for this table");
  std::vector<std::uint32_t> out;
  while (i != id) {
    out.push_back(pred[i].second);
    i = pred[i].first;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

GroupTable generate_closure(const FiniteRing& r, const std::vector<Mat2>& gens,
                            std::size_t cap) {
  GroupTable g;
  g.ring = r;
  for (const Mat2& m : gens)
    check(r.is_unit(m2_det(r, m)), "closure generator is not invertible");

  Mat2 idm = m2_identity(r);
  g.elems.push_back(idm);
  g.index.emplace(g.key(idm), 0);
  g.pred.emplace_back(0, GroupTable::npos);
  g.id = 0;

  // register generators first so their indices are stable and small
  for (const Mat2& m : gens) {
    auto [it, fresh] = g.index.emplace(g.key(m), g.elems.size());
    if (fresh) {
      g.elems.push_back(m);
      g.pred.emplace_back(0, static_cast<std::uint32_t>(g.gens.size()));
    }
    g.gens.push_back(it->second);
  }

  for (std::uint32_t at = 0; at < g.elems.size(); at++) {
    Mat2 x = g.elems[at];
    for (std::size_t gi = 0; gi < gens.size(); gi++) {
      Mat2 y = m2_mul(r, x, gens[gi]);
      auto [it, fresh] = g.index.emplace(g.key(y), g.elems.size());
      if (fresh) {
        if (g.elems.size() >= cap)
          throw CapError("group closure exceeds cap " + std::to_string(cap));
        g.elems.push_back(y);
        g.pred.emplace_back(at, static_cast<std::uint32_t>(gi));
      }
    }
  }
  return g;
}

GroupTable elementary_group(const FiniteRing& r, std::size_t cap) {
  std::vector<Mat2> gens;
  for (Elem x = 0; x < r.n; x++) gens.push_back(e12(r, x));
  for (Elem x = 0; x < r.n; x++) gens.push_back(e21(r, x));
  return generate_closure(r, gens, cap);
}

GroupTable borel_group(const FiniteRing& r, std::size_t cap) {
  std::vector<Mat2> gens;
  for (Elem a : r.units) gens.push_back(diag_u(r, a));
  for (Elem x = 0; x < r.n; x++) gens.push_back(e12(r, x));
  return generate_closure(r, gens, cap);
}

Sl2Compare sl2_and_e2(const FiniteRing& r, std::size_t cap) {
  std::uint64_t n = r.n;
  if (n * n * n * n > 100000000ull)
    throw CapError("SL2 enumeration infeasible for |A| = " + std::to_string(n));
  Sl2Compare out;
  out.sl2.ring = r;
  for (Elem a = 0; a < n; a++)
    for (Elem b = 0; b < n; b++)
      for (Elem c = 0; c < n; c++)
        for (Elem d = 0; d < n; d++) {
          Mat2 m{a, b, c, d};
          if (m2_det(r, m) != r.one) continue;
          if (m == m2_identity(r)) continue;
          if (out.sl2.elems.size() >= cap)
            throw CapError("SL2 order exceeds cap " + std::to_string(cap));
          // identity gets index 0 below
          out.sl2.elems.push_back(m);
        }
  out.sl2.elems.insert(out.sl2.elems.begin(), m2_identity(r));
  out.sl2.id = 0;
  for (std::uint32_t i = 0; i < out.sl2.elems.size(); i++)
    out.sl2.index.emplace(out.sl2.key(out.sl2.elems[i]), i);
  out.e2 = elementary_group(r, cap);
  out.equal = out.sl2.size() == out.e2.size();  // E2 is a subgroup of SL2
  return out;
}

StandardSubgroups standard_subgroups(const FiniteRing& r, const GroupTable& g) {
  StandardSubgroups s;
  for (std::uint32_t i = 0; i < g.size(); i++) {
    const Mat2& m = g.elems[i];
    if (m.c != r.zero) continue;
    if (!r.is_unit(m.a) || m.d != r.inv(m.a)) continue;
    s.b.push_back(i);
    if (m.b == r.zero) s.t.push_back(i);
    if (m.a == r.one) s.n.push_back(i);
  }
  s.w = g.of(w_mat(r));
  for (Elem a : r.units) s.d_of.emplace(a, g.of(diag_u(r, a)));
  for (Elem x = 0; x < r.n; x++) {
    s.e12_of.emplace(x, g.of(e12(r, x)));
    s.e21_of.emplace(x, g.of(e21(r, x)));
  }
  return s;
}

// --- abelianization ----------------------------------------------------------------

namespace {

// right-multiplication BFS closure over the subgroup generated by gen_ids
std::vector<char> subgroup_closure(const GroupTable& g,
                                   const std::vector<std::uint32_t>& gen_ids) {
  std::vector<char> member(g.size(), 0);
  std::vector<std::uint32_t> list;
  member[g.id] = 1;
  list.push_back(g.id);
  for (std::size_t at = 0; at < list.size(); at++)
    for (std::uint32_t gi : gen_ids) {
      std::uint32_t y = g.mul(list[at], gi);
      if (!member[y]) {
        member[y] = 1;
        list.push_back(y);
      }
    }
  return member;
}

}  // namespace

Abelianized abelianize(const GroupTable& g) {
  check(!g.gens.empty(), "abelianization needs a recorded generator list");

  // commutators of the generators
  std::set<std::uint32_t> seed;
  for (std::uint32_t x : g.gens)
    for (std::uint32_t y : g.gens) {
      std::uint32_t c =
          g.mul(g.mul(g.inv(x), g.inv(y)), g.mul(x, y));
      if (c != g.id) seed.insert(c);
    }

  // normal closure: extend by generator conjugates until stable
  std::vector<std::uint32_t> gen_ids(seed.begin(), seed.end());
  std::vector<char> member = subgroup_closure(g, gen_ids);
  for (;;) {
    std::size_t count = std::count(member.begin(), member.end(), char(1));
    if (count == g.size()) break;
    bool grew = false;
    for (std::uint32_t x = 0; x < g.size(); x++) {
      if (!member[x]) continue;
      for (std::uint32_t gi : g.gens) {
        std::uint32_t y = g.conj(gi, x);
        if (!member[y]) {
          gen_ids.push_back(y);
          grew = true;
        }
      }
    }
    if (!grew) break;
    member = subgroup_closure(g, gen_ids);
  }

  Abelianized out;
  for (std::uint32_t i = 0; i < g.size(); i++)
    if (member[i]) out.derived.push_back(i);

  // label cosets; S is normal so left and right cosets agree
  out.coset_of.assign(g.size(), GroupTable::npos);
  std::vector<std::uint32_t> reps;
  for (std::uint32_t i = 0; i < g.size(); i++) {
    if (out.coset_of[i] != GroupTable::npos) continue;
    std::uint32_t cid = static_cast<std::uint32_t>(reps.size());
    reps.push_back(i);
    for (std::uint32_t s : out.derived) out.coset_of[g.mul(i, s)] = cid;
    check(out.coset_of[i] == cid, "coset labeling failed");
  }

  std::vector<Elem> coset_elems(reps.size());
  for (std::size_t i = 0; i < reps.size(); i++)
    coset_elems[i] = static_cast<Elem>(i);
  auto coset_mul = [&](Elem x, Elem y) {
    return static_cast<Elem>(out.coset_of[g.mul(reps[x], reps[y])]);
  };
  TableGroup tg = abelian_table_group(coset_elems, coset_mul,
                                      static_cast<Elem>(out.coset_of[g.id]));
  out.structure = tg.structure;
  out.coset_coord.resize(reps.size());
  for (std::size_t i = 0; i < reps.size(); i++)
    out.coset_coord[i] = tg.coord(static_cast<Elem>(i));
  return out;
}

AbGroup abelianization(const GroupTable& g) { return abelianize(g).structure; }

GroupTable central_quotient(const GroupTable& g) {
  const FiniteRing& r = g.ring;
  Mat2 minus = m2_neg(r, m2_identity(r));
  check(g.contains(minus), "central quotient: -I not in group");
  if (minus == m2_identity(r)) return g;

  GroupTable q;
  q.ring = r;
  std::vector<std::uint32_t> qid(g.size(), GroupTable::npos);
  for (std::uint32_t i = 0; i < g.size(); i++) {
    if (qid[i] != GroupTable::npos) continue;
    std::uint32_t j = g.of(m2_neg(r, g.elems[i]));
    std::uint32_t cid = static_cast<std::uint32_t>(q.elems.size());
    qid[i] = qid[j] = cid;
    q.elems.push_back(g.elems[i]);  // i < j, so the rep is the earlier element
    q.index.emplace(q.key(g.elems[i]), cid);
    q.index.emplace(q.key(g.elems[j]), cid);
  }
  q.id = qid[g.id];
  std::set<std::uint32_t> gset;
  for (std::uint32_t gi : g.gens) gset.insert(qid[gi]);
  gset.erase(q.id);
  q.gens.assign(gset.begin(), gset.end());
  return q;
}

}  // namespace e2hom
