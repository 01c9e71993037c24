#include "doctest.h"
#include "e2hom/chains.hpp"

#include <random>

using namespace e2hom;

namespace {

struct Setup {
  FiniteRing r;
  GroupTable e2;
  YComplex y;
  explicit Setup(const std::string& name, int deg = 2)
      : r(build_ring_named(name)),
        e2(elementary_group(r)),
        y(build_y_complex(r, deg)) {}
};

BarChain expected_r_boundary(const Setup& s, Elem z) {
  BarChain b = bar_chain(1);
  bar_add(b, s.e2, {s.e2.of(m2_inv(s.r, w_mat(s.r)))}, 1);
  bar_add(b, s.e2, {s.e2.of(diag_u(s.r, z))}, 1);  // drops when z = 1
  return b;
}

TensorChain gamma_tensor(const Setup& s, Elem z, std::uint32_t at) {
  TensorChain t = tensor_chain(1, 1);
  tensor_add(t, s.e2, {s.e2.of(m2_inv(s.r, g_mat(s.r, z)))}, at, 1);
  tensor_add(t, s.e2, {s.e2.of(m2_inv(s.r, h_mat(s.r, z)))}, at, -1);
  tensor_add(t, s.e2, {s.e2.of(m2_inv(s.r, g_mat(s.r, s.r.one)))}, at, -1);
  tensor_add(t, s.e2, {s.e2.of(m2_inv(s.r, h_mat(s.r, s.r.one)))}, at, 1);
  return t;
}

Chain x_chain(const Setup& s, Elem z) {
  std::uint32_t inf = s.y.line.infinity, org = s.y.line.origin;
  Chain c = s.y.boundary_of(
      2, s.y.tuple_index(2, {inf, org, s.y.line.affine(s.r, z)}));
  for (const auto& [i, v] : s.y.boundary_of(
           2, s.y.tuple_index(2, {inf, org, s.y.line.affine(s.r, s.r.one)}))) {
    Int& e = c[i];
    e -= v;
    if (e == 0) c.erase(i);
  }
  return c;
}

std::uint32_t y_inf(const Setup& s) {
  return s.y.tuple_index(0, {s.y.line.infinity});
}

// U_z = (id (x) d1)(Gamma_z (x) (inf,0))
TensorChain u_chain(const Setup& s, Elem z) {
  std::uint32_t pair01 =
      s.y.tuple_index(1, {s.y.line.infinity, s.y.line.origin});
  return tensor_y_boundary(s.e2, s.y, gamma_tensor(s, z, pair01));
}

TensorChain over_inf(const Setup& s, const BarChain& bc) {
  TensorChain t = tensor_chain(bc.k, 0);
  for (const auto& [tup, c] : bc.terms) tensor_add(t, s.e2, tup, y_inf(s), c);
  return t;
}

}  // namespace

TEST_CASE("normalized bar semantics") {
  Setup s("GF(5)");
  std::uint32_t g = s.e2.of(e12(s.r, 3));

  BarChain ones = bar_chain(2);
  bar_add(ones, s.e2, {s.e2.id, s.e2.id}, 1);
  CHECK(ones.terms.empty());
  bar_add(ones, s.e2, {g, s.e2.id}, 7);
  CHECK(ones.terms.empty());

  // d[g|g^-1] = [g^-1] - [1] + [g], where the [1] term is degenerate
  BarChain two = bar_chain(2);
  bar_add(two, s.e2, {g, s.e2.inv(g)}, 1);
  BarChain expect = bar_chain(1);
  bar_add(expect, s.e2, {s.e2.inv(g)}, 1);
  bar_add(expect, s.e2, {s.e2.id}, -1);
  bar_add(expect, s.e2, {g}, 1);
  CHECK(expect.terms.size() == 2);
  CHECK(bar_equal(bar_boundary(s.e2, two), expect));

  // in degree one the outer faces cancel
  BarChain one = bar_chain(1);
  bar_add(one, s.e2, {g}, 4);
  bar_add(one, s.e2, {s.e2.of(w_mat(s.r))}, -2);
  CHECK(bar_boundary(s.e2, one).terms.empty());
}

TEST_CASE("bar boundary squares to zero on random chains") {
  Setup s("GF(5)");
  std::mt19937 rng(20260819);
  std::uniform_int_distribution<std::uint32_t> pick(0, s.e2.size() - 1);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int trial = 0; trial < 500; trial++) {
    BarChain ch = bar_chain(3);
    for (int t = 0; t < 6; t++)
      bar_add(ch, s.e2, {pick(rng), pick(rng), pick(rng)}, coef(rng));
    BarChain d = bar_boundary(s.e2, ch);
    CHECK(bar_boundary(s.e2, d).terms.empty());
  }
}

TEST_CASE("R chain boundary is [w^-1] + [D(z)]") {
  Setup s5("GF(5)");
  for (Elem z : unit_data(s5.r).units) {
    BarChain rz = r_chain(s5.r, s5.e2, z);
    CHECK(bar_equal(bar_boundary(s5.e2, rz), expected_r_boundary(s5, z)));
  }
  Setup s7("GF(7)");
  for (Elem z : unit_data(s7.r).units) {
    BarChain rz = r_chain(s7.r, s7.e2, z);
    CHECK(bar_equal(bar_boundary(s7.e2, rz), expected_r_boundary(s7, z)));
  }
  Setup s9("Z/9");
  for (Elem z : unit_data(s9.r).units) {
    BarChain rz = r_chain(s9.r, s9.e2, z);
    CHECK(bar_equal(bar_boundary(s9.e2, rz), expected_r_boundary(s9, z)));
  }
  CHECK(r_chain(s9.r, s9.e2, 2).terms.size() == 11);
  CHECK(r_chain(s5.r, s5.e2, 2).terms.size() == 11);
}

TEST_CASE("standard second-homology generators are cycles") {
  Setup s("GF(5)");
  const std::vector<Elem> units = unit_data(s.r).units;
  for (Elem a : units)
    for (Elem b : units) {
      CHECK(verify_cycle(s.e2, f_cycle(s.r, s.e2, a, b)));
      CHECK(verify_cycle(s.e2, h_cycle(s.r, s.e2, a, b)));
    }
  for (Elem x = 0; x < s.r.n; x++)
    for (Elem y = 0; y < s.r.n; y++)
      CHECK(verify_cycle(s.e2, g_cycle(s.r, s.e2, x, y)));

  Setup s7("GF(7)");
  StandardCycles c7 = standard_cycles(s7.r, s7.e2, 2, 3, 1, 5);
  CHECK(verify_cycle(s7.e2, c7.f));
  CHECK(verify_cycle(s7.e2, c7.g));
  CHECK(verify_cycle(s7.e2, c7.h));

  Setup s9("Z/9");
  StandardCycles c9 = standard_cycles(s9.r, s9.e2, 2, 4, 3, 6);
  CHECK(verify_cycle(s9.e2, c9.f));
  CHECK(verify_cycle(s9.e2, c9.g));
  CHECK(verify_cycle(s9.e2, c9.h));
}

TEST_CASE("outer shuffle with [-1] turns 2-cycles into 3-cycles") {
  Setup s("GF(5)");
  std::uint32_t minus = s.e2.of(m2_neg(s.r, m2_identity(s.r)));
  StandardCycles cs = standard_cycles(s.r, s.e2, 2, 3, 1, 4);
  for (const BarChain* z : {&cs.f, &cs.g, &cs.h}) {
    BarChain sh = shuffle_product(s.e2, minus, *z);
    CHECK(sh.k == 3);
    CHECK(!sh.terms.empty());
    CHECK(verify_cycle(s.e2, sh));
  }
}

TEST_CASE("tensor boundaries commute and square to zero") {
  Setup s("GF(5)");
  std::mt19937 rng(5);
  std::uniform_int_distribution<std::uint32_t> pick(0, s.e2.size() - 1);
  std::uniform_int_distribution<std::uint32_t> simp(0, s.y.dim(2) - 1);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int trial = 0; trial < 40; trial++) {
    TensorChain ch = tensor_chain(2, 2);
    for (int t = 0; t < 5; t++)
      tensor_add(ch, s.e2, {pick(rng), pick(rng)}, simp(rng), coef(rng));
    TensorChain db = tensor_bar_boundary(s.e2, s.y, ch);
    TensorChain dy = tensor_y_boundary(s.e2, s.y, ch);
    CHECK(tensor_bar_boundary(s.e2, s.y, db).terms.empty());
    CHECK(tensor_y_boundary(s.e2, s.y, dy).terms.empty());
    CHECK(tensor_equal(tensor_y_boundary(s.e2, s.y, db),
                       tensor_bar_boundary(s.e2, s.y, dy)));
  }
}

TEST_CASE("upper triangular entries fix the basepoint") {
  Setup s("GF(5)");
  std::uint32_t inf = y_inf(s);
  std::uint32_t g = s.e2.of(upper(s.r, 2, 3));
  std::uint32_t h = s.e2.of(upper(s.r, 4, 1));
  TensorChain t = tensor_chain(2, 0);
  tensor_add(t, s.e2, {g, h}, inf, 1);
  TensorChain expect = tensor_chain(1, 0);
  tensor_add(expect, s.e2, {h}, inf, 1);
  tensor_add(expect, s.e2, {s.e2.mul(g, h)}, inf, -1);
  tensor_add(expect, s.e2, {g}, inf, 1);
  CHECK(tensor_equal(tensor_bar_boundary(s.e2, s.y, t), expect));
}

TEST_CASE("lift identity: bar boundary of Gamma_z lands on X_z") {
  for (const std::string& name : {std::string("GF(5)"), std::string("GF(7)")}) {
    Setup s(name);
    std::uint32_t pair01 =
        s.y.tuple_index(1, {s.y.line.infinity, s.y.line.origin});
    for (Elem z : unit_data(s.r).units) {
      TensorChain big = gamma_tensor(s, z, pair01);
      CHECK(tensor_equal(tensor_bar_boundary(s.e2, s.y, big),
                         tensor_from_y(s.e2, 1, x_chain(s, z))));
    }
  }
}

TEST_CASE("R step: U_z + [D(z)] is a bar boundary") {
  Setup s("GF(5)");
  BarChain r1 = r_chain(s.r, s.e2, s.r.one);
  for (Elem z : unit_data(s.r).units) {
    BarChain diff = r_chain(s.r, s.e2, z);
    bar_acc(diff, s.e2, r1, -1);
    TensorChain rhs = tensor_bar_boundary(s.e2, s.y, over_inf(s, diff));
    TensorChain lhs = u_chain(s, z);
    tensor_add(lhs, s.e2, {s.e2.of(diag_u(s.r, z))}, y_inf(s), 1);
    CHECK(tensor_equal(lhs, rhs));
  }
}

TEST_CASE("main identity: bar boundary of f over the basepoint") {
  Setup s("GF(5)");
  const std::vector<Elem> units = unit_data(s.r).units;
  for (Elem a : units)
    for (Elem b : units) {
      TensorChain lhs = tensor_bar_boundary(
          s.e2, s.y, over_inf(s, f_cycle(s.r, s.e2, a, b)));
      TensorChain rhs = u_chain(s, s.r.mul(a, b));
      tensor_acc(rhs, s.e2, u_chain(s, a), -1);
      tensor_acc(rhs, s.e2, u_chain(s, b), -1);
      CHECK(tensor_equal(lhs, rhs));
    }
}
