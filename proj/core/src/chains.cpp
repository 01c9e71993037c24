#include "e2hom/chains.hpp"

#include "e2hom/witt.hpp"

namespace e2hom {

// --- bar chains ---------------------------------------------------------------------

BarChain bar_chain(int k) {
  check(k >= 0, "bar_chain: negative degree");
  return BarChain{k, {}};
}

void bar_add(BarChain& ch, const GroupTable& g,
             const std::vector<std::uint32_t>& t, const Int& c) {
  check(static_cast<int>(t.size()) == ch.k, "bar_add: wrong tuple length");
  if (c == 0) return;
  for (std::uint32_t gi : t) {
    check(gi < g.size(), "bar_add: element index out of range");
    if (gi == g.id) return;  // normalized complex: degenerate tuple
  }
  auto [it, fresh] = ch.terms.try_emplace(t, 0);
  it->second += c;
  if (it->second == 0) ch.terms.erase(it);
}

void bar_acc(BarChain& a, const GroupTable& g, const BarChain& b, const Int& c) {
  check(a.k == b.k, "bar_acc: degree mismatch");
  for (const auto& [t, co] : b.terms) bar_add(a, g, t, co * c);
}

bool bar_equal(const BarChain& a, const BarChain& b) {
  return a.k == b.k && a.terms == b.terms;
}

BarChain bar_boundary(const GroupTable& g, const BarChain& ch) {
  check(ch.k >= 1, "bar_boundary: degree must be at least 1");
  BarChain out = bar_chain(ch.k - 1);
  for (const auto& [t, c] : ch.terms) {
    std::vector<std::uint32_t> f(t.begin() + 1, t.end());
    bar_add(out, g, f, c);  // drop the first entry
    for (int i = 0; i + 1 < ch.k; i++) {
      f = t;
      f[i] = g.mul(t[i], t[i + 1]);
      f.erase(f.begin() + i + 1);
      bar_add(out, g, f, (i % 2 == 0) ? -c : c);  // merge at position i+1
    }
    f.assign(t.begin(), t.end() - 1);
    bar_add(out, g, f, (ch.k % 2 == 0) ? c : -c);  // drop the last entry
  }
  return out;
}

bool verify_cycle(const GroupTable& g, const BarChain& ch) {
  return bar_boundary(g, ch).terms.empty();
}

BarChain shuffle_product(const GroupTable& g, std::uint32_t c, const BarChain& z) {
  check(z.k == 2, "shuffle_product: need a 2-chain");
  check(c < g.size(), "shuffle_product: element index out of range");
  check(g.inv(c) == c, "shuffle_product: element must square to the identity");
  for (std::uint32_t gi : g.gens)
    check(g.mul(c, gi) == g.mul(gi, c), "shuffle_product: element must be central");
  BarChain out = bar_chain(3);
  for (const auto& [t, co] : z.terms) {
    bar_add(out, g, {c, t[0], t[1]}, co);
    bar_add(out, g, {t[0], c, t[1]}, -co);
    bar_add(out, g, {t[0], t[1], c}, co);
  }
  return out;
}

// --- tensor chains ------------------------------------------------------------------

TensorChain tensor_chain(int k, int n) {
  check(k >= 0 && n >= 0, "tensor_chain: negative degree");
  return TensorChain{k, n, {}};
}

void tensor_add(TensorChain& ch, const GroupTable& g,
                const std::vector<std::uint32_t>& bar, std::uint32_t s,
                const Int& c) {
  check(static_cast<int>(bar.size()) == ch.k, "tensor_add: wrong tuple length");
  if (c == 0) return;
  for (std::uint32_t gi : bar) {
    check(gi < g.size(), "tensor_add: element index out of range");
    if (gi == g.id) return;
  }
  auto [it, fresh] = ch.terms.try_emplace(std::make_pair(bar, s), 0);
  it->second += c;
  if (it->second == 0) ch.terms.erase(it);
}

void tensor_acc(TensorChain& a, const GroupTable& g, const TensorChain& b,
                const Int& c) {
  check(a.k == b.k && a.n == b.n, "tensor_acc: degree mismatch");
  for (const auto& [key, co] : b.terms) tensor_add(a, g, key.first, key.second, co * c);
}

bool tensor_equal(const TensorChain& a, const TensorChain& b) {
  return a.k == b.k && a.n == b.n && a.terms == b.terms;
}

TensorChain tensor_from_y(const GroupTable& g, int n, const Chain& z) {
  TensorChain out = tensor_chain(0, n);
  for (const auto& [i, c] : z) tensor_add(out, g, {}, i, c);
  return out;
}

namespace {

// index of g^-1 . s in the degree-n basis
std::uint32_t act_inverse(const GroupTable& g, const YComplex& y, std::uint32_t gi,
                          int n, std::uint32_t s) {
  const Mat2& m = g.elems[g.inv(gi)];
  return y.tuple_index(n, y.apply_tuple(m, y.basis[n][s]));
}

}  // namespace

TensorChain tensor_bar_boundary(const GroupTable& g, const YComplex& y,
                                const TensorChain& ch) {
  check(ch.k >= 1, "tensor_bar_boundary: bar degree must be at least 1");
  check(ch.n <= y.max_degree, "tensor_bar_boundary: degree beyond complex");
  TensorChain out = tensor_chain(ch.k - 1, ch.n);
  for (const auto& [key, c] : ch.terms) {
    const auto& [t, s] = key;
    std::vector<std::uint32_t> f(t.begin() + 1, t.end());
    tensor_add(out, g, f, act_inverse(g, y, t[0], ch.n, s), c);
    for (int i = 0; i + 1 < ch.k; i++) {
      f = t;
      f[i] = g.mul(t[i], t[i + 1]);
      f.erase(f.begin() + i + 1);
      tensor_add(out, g, f, s, (i % 2 == 0) ? -c : c);
    }
    f.assign(t.begin(), t.end() - 1);
    tensor_add(out, g, f, s, (ch.k % 2 == 0) ? c : -c);
  }
  return out;
}

TensorChain tensor_y_boundary(const GroupTable& g, const YComplex& y,
                              const TensorChain& ch) {
  check(ch.n >= 1, "tensor_y_boundary: Y-degree must be at least 1");
  check(ch.n <= y.max_degree, "tensor_y_boundary: degree beyond complex");
  TensorChain out = tensor_chain(ch.k, ch.n - 1);
  for (const auto& [key, c] : ch.terms) {
    const auto& [t, s] = key;
    for (const auto& [i, c2] : y.boundary_of(ch.n, s))
      tensor_add(out, g, t, i, c * c2);
  }
  return out;
}

// --- the explicit 2-chains ----------------------------------------------------------

BarChain r_chain(const FiniteRing& r, const GroupTable& g, Elem z) {
  check(r.is_unit(r.int_elem(2)), "r_chain: 2 must be a unit");
  check(r.is_unit(z), "r_chain: parameter must be a unit");
  Elem zi = r.inv(z);
  Mat2 w = w_mat(r);
  Mat2 gz_i = m2_inv(r, g_mat(r, z));
  Mat2 hz = h_mat(r, z), hz_i = m2_inv(r, hz);
  Mat2 hzr = h_mat(r, zi);  // h_{z^-1} = E12(z)
  Mat2 dz = diag_u(r, z), dz_i = diag_u(r, zi);
  Mat2 d2m = diag_u(r, r.int_elem(2)), d2i = m2_inv(r, d2m);
  BarChain out = bar_chain(2);
  auto add = [&](const Mat2& x, const Mat2& v, int c) {
    bar_add(out, g, {g.of(x), g.of(v)}, c);
  };
  add(w, gz_i, 1);
  add(w, hz_i, -1);
  add(m2_mul(r, hz_i, dz_i), m2_mul(r, w, hz_i), -1);
  add(hzr, m2_inv(r, w), 1);
  add(hz_i, dz_i, -1);
  add(m2_mul(r, dz, hz), dz_i, 1);
  add(m2_mul(r, dz, hz), hz_i, -1);
  add(hz_i, hz_i, 2);
  add(m2_mul(r, hz_i, hz_i), m2_mul(r, hz_i, hz_i), 1);
  add(m2_mul(r, m2_mul(r, d2m, hz_i), d2i), d2m, 1);
  add(d2m, hz_i, -1);
  return out;
}

BarChain f_cycle(const FiniteRing& r, const GroupTable& g, Elem a, Elem b) {
  check(r.is_unit(a) && r.is_unit(b), "f_cycle: parameters must be units");
  BarChain out = bar_chain(2);
  bar_add(out, g, {g.of(diag_u(r, a)), g.of(diag_u(r, b))}, 1);
  bar_acc(out, g, r_chain(r, g, r.mul(a, b)), 1);
  bar_acc(out, g, r_chain(r, g, a), -1);
  bar_acc(out, g, r_chain(r, g, b), -1);
  bar_acc(out, g, r_chain(r, g, r.one), 1);
  return out;
}

BarChain g_cycle(const FiniteRing& r, const GroupTable& g, Elem x, Elem y) {
  check(x < r.n && y < r.n, "g_cycle: parameters must be ring elements");
  BarChain out = bar_chain(2);
  bar_add(out, g, {g.of(e12(r, x)), g.of(e12(r, y))}, 1);
  bar_add(out, g, {g.of(e12(r, y)), g.of(e12(r, x))}, -1);
  return out;
}

BarChain h_cycle(const FiniteRing& r, const GroupTable& g, Elem a, Elem b) {
  check(r.is_unit(a) && r.is_unit(b), "h_cycle: parameters must be units");
  BarChain out = bar_chain(2);
  bar_add(out, g, {g.of(diag_u(r, a)), g.of(diag_u(r, b))}, 1);
  bar_add(out, g, {g.of(diag_u(r, b)), g.of(diag_u(r, a))}, -1);
  return out;
}

StandardCycles standard_cycles(const FiniteRing& r, const GroupTable& g, Elem a,
                               Elem b, Elem x, Elem y) {
  return StandardCycles{f_cycle(r, g, a, b), g_cycle(r, g, x, y),
                        h_cycle(r, g, a, b)};
}

// --- the connecting-map replay --------------------------------------------------------

ConnectingReplay connecting_replay(const YComplex& y, const GroupTable& e2,
                                   const GrothendieckWitt& gw, Elem a, Elem b) {
  const FiniteRing& r = y.ring;
  check(r.is_unit(r.int_elem(2)), "connecting_replay: 2 must be a unit");
  check(r.is_unit(a) && r.is_unit(b),
        "connecting_replay: parameters must be units");
  check(y.max_degree >= 2, "connecting_replay: complex needs degree 2");
  Elem ab = r.mul(a, b);
  std::uint32_t inf = y.line.infinity, org = y.line.origin;
  std::uint32_t pair01 = y.tuple_index(1, {inf, org});
  std::uint32_t yinf = y.tuple_index(0, {inf});

  auto gamma = [&](Elem z) {
    BarChain c = bar_chain(1);
    bar_add(c, e2, {e2.of(m2_inv(r, g_mat(r, z)))}, 1);
    bar_add(c, e2, {e2.of(m2_inv(r, h_mat(r, z)))}, -1);
    bar_add(c, e2, {e2.of(m2_inv(r, g_mat(r, r.one)))}, -1);
    bar_add(c, e2, {e2.of(m2_inv(r, h_mat(r, r.one)))}, 1);
    return c;
  };
  auto x_chain = [&](Elem z) {  // X_z = d((inf,0,z) - (inf,0,1))
    Chain x = y.boundary_of(2, y.tuple_index(2, {inf, org, y.line.affine(r, z)}));
    Chain x1 =
        y.boundary_of(2, y.tuple_index(2, {inf, org, y.line.affine(r, r.one)}));
    for (const auto& [i, c] : x1) {
      Int& e = x[i];
      e -= c;
      if (e == 0) x.erase(i);
    }
    return x;
  };
  auto over_point = [&](const BarChain& bc, std::uint32_t s, int n) {
    TensorChain t = tensor_chain(bc.k, n);
    for (const auto& [tu, c] : bc.terms) tensor_add(t, e2, tu, s, c);
    return t;
  };

  ConnectingReplay rep;
  rep.lift_ok = rep.r_step_ok = true;
  BarChain r1 = r_chain(r, e2, r.one);
  std::map<Elem, TensorChain> u_of;
  for (Elem z : {a, b, ab}) {
    TensorChain big = over_point(gamma(z), pair01, 1);
    rep.lift_ok = rep.lift_ok &&
                  tensor_equal(tensor_bar_boundary(e2, y, big),
                               tensor_from_y(e2, 1, x_chain(z)));
    TensorChain u = tensor_y_boundary(e2, y, big);
    BarChain rz = r_chain(r, e2, z);
    bar_acc(rz, e2, r1, -1);
    TensorChain rhs = tensor_bar_boundary(e2, y, over_point(rz, yinf, 0));
    TensorChain lhs = u;
    tensor_add(lhs, e2, {e2.of(diag_u(r, z))}, yinf, 1);
    rep.r_step_ok = rep.r_step_ok && tensor_equal(lhs, rhs);
    u_of.emplace(z, std::move(u));
  }

  TensorChain main_lhs =
      tensor_bar_boundary(e2, y, over_point(f_cycle(r, e2, a, b), yinf, 0));
  TensorChain main_rhs = u_of.at(ab);
  tensor_acc(main_rhs, e2, u_of.at(a), -1);
  tensor_acc(main_rhs, e2, u_of.at(b), -1);
  rep.main_ok = tensor_equal(main_lhs, main_rhs);

  Chain zc = x_chain(ab);
  for (Elem z : {a, b})
    for (const auto& [i, c] : x_chain(z)) {
      Int& e = zc[i];
      e -= c;
      if (e == 0) zc.erase(i);
    }
  GwElem got = gw.element(zc);
  GwElem want = gw.pontryagin(a, b);
  rep.value = got.coords;
  rep.pontryagin = want.coords;
  rep.matches = gw.equal(got, want);
  return rep;
}

}  // namespace e2hom
