#include "doctest.h"
#include "e2hom/ring.hpp"

#include <algorithm>
#include <set>

using namespace e2hom;

namespace {

void check_ring_axioms(const FiniteRing& r) {
  REQUIRE(r.n >= 2);
  CHECK(r.zero != r.one);
  for (Elem a = 0; a < r.n; a++) {
    CHECK(r.add(a, r.zero) == a);
    CHECK(r.mul(a, r.one) == a);
    CHECK(r.add(a, r.neg(a)) == r.zero);
    if (r.is_unit(a)) CHECK(r.mul(a, r.inv(a)) == r.one);
    for (Elem b = 0; b < r.n; b++) {
      CHECK(r.add(a, b) == r.add(b, a));
      CHECK(r.mul(a, b) == r.mul(b, a));
      for (Elem c = 0; c < r.n; c++) {
        CHECK(r.add(r.add(a, b), c) == r.add(a, r.add(b, c)));
        CHECK(r.mul(r.mul(a, b), c) == r.mul(a, r.mul(b, c)));
        CHECK(r.mul(a, r.add(b, c)) == r.add(r.mul(a, b), r.mul(a, c)));
      }
    }
  }
}

std::vector<Elem> sorted(std::vector<Elem> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("parser: accepted forms") {
  RingSpec s = parse_ring_spec("Z/12");
  REQUIRE(s.atoms.size() == 1);
  CHECK(s.atoms[0].kind == RingAtom::Kind::modular);
  CHECK(s.atoms[0].n == 12);
  CHECK(s.canonical() == "Z/12");

  s = parse_ring_spec("GF(9) x Z/4");
  REQUIRE(s.atoms.size() == 2);
  CHECK(s.atoms[0].kind == RingAtom::Kind::field);
  CHECK(s.atoms[0].p == 3);
  CHECK(s.atoms[0].d == 2);
  CHECK(s.atoms[1].kind == RingAtom::Kind::modular);
  CHECK(s.canonical() == "GF(9) x Z/4");

  s = parse_ring_spec("F2[t]/t^2");
  REQUIRE(s.atoms.size() == 1);
  CHECK(s.atoms[0].kind == RingAtom::Kind::trunc_poly);
  CHECK(s.atoms[0].p == 2);
  CHECK(s.atoms[0].k == 2);

  s = parse_ring_spec("  Z/2   x GF( 4 ) x F3[t]/t^1 ");
  CHECK(s.atoms.size() == 3);
  CHECK(s.canonical() == "Z/2 x GF(4) x F3[t]/t^1");
}

TEST_CASE("parser: rejections carry byte offsets") {
  CHECK_THROWS_AS(parse_ring_spec("GF(6)"), ParseError);
  try {
    parse_ring_spec("GF(6)");
  } catch (const ParseError& e) {
    CHECK(e.offset == 3);
  }
  CHECK_THROWS_AS(parse_ring_spec("Z/1"), ParseError);
  CHECK_THROWS_AS(parse_ring_spec("Z/"), ParseError);
  CHECK_THROWS_AS(parse_ring_spec("F4[t]/t^2"), ParseError);  // 4 not prime
  CHECK_THROWS_AS(parse_ring_spec("F2[t]/t^0"), ParseError);
  CHECK_THROWS_AS(parse_ring_spec("Z/4 y Z/2"), ParseError);
  CHECK_THROWS_AS(parse_ring_spec("Z/4 Z/2"), ParseError);
  CHECK_THROWS_AS(parse_ring_spec(""), ParseError);
  CHECK_THROWS_AS(parse_ring_spec("Q"), ParseError);
}

TEST_CASE("modular ring arithmetic") {
  FiniteRing r = build_ring_named("Z/4");
  CHECK(r.n == 4);
  CHECK(r.add(2, 3) == 1);
  CHECK(r.mul(2, 2) == 0);
  CHECK(r.units == std::vector<Elem>{1, 3});
  CHECK(r.int_elem(-1) == 3);
  CHECK(r.int_elem(7) == 3);
  check_ring_axioms(r);
}

TEST_CASE("truncated polynomial ring") {
  FiniteRing r = build_ring_named("F2[t]/t^2");
  CHECK(r.n == 4);
  // id 2 = t, id 3 = 1+t
  CHECK(r.mul(2, 2) == 0);
  CHECK(r.mul(3, 3) == 1);
  CHECK(r.labels[2] == "t");
  CHECK(r.labels[3] == "t+1");
  CHECK(sorted(r.units) == std::vector<Elem>{1, 3});
  check_ring_axioms(r);
}

TEST_CASE("field construction") {
  FiniteRing f4 = build_ring_named("GF(4)");
  CHECK(f4.n == 4);
  // modulus t^2+t+1: t*t = t+1
  CHECK(f4.mul(2, 2) == 3);
  CHECK(f4.pow(2, 3) == 1);
  check_ring_axioms(f4);
  for (Elem a = 1; a < 4; a++) CHECK(f4.is_unit(a));

  FiniteRing f8 = build_ring_named("GF(8)");
  CHECK(f8.n == 8);
  check_ring_axioms(f8);
  CHECK(f8.units.size() == 7);
  // modulus t^3+t+1: t*t^2 = t^3 = t+1
  CHECK(f8.mul(2, 4) == 3);

  FiniteRing f9 = build_ring_named("GF(9)");
  CHECK(f9.n == 9);
  check_ring_axioms(f9);
  CHECK(f9.units.size() == 8);
  // modulus t^2+1: t*t = -1 = 2
  CHECK(f9.mul(3, 3) == 2);
}

TEST_CASE("product rings and brute-force isomorphism") {
  FiniteRing p = build_ring_named("Z/2 x Z/3");
  CHECK(p.n == 6);
  check_ring_axioms(p);
  FiniteRing z6 = build_ring_named("Z/6");
  CHECK(rings_isomorphic(p, z6));
  CHECK(rings_isomorphic(z6, p));

  FiniteRing z4 = build_ring_named("Z/4");
  FiniteRing k4 = build_ring_named("F2[t]/t^2");
  FiniteRing v4 = build_ring_named("Z/2 x Z/2");
  CHECK(!rings_isomorphic(z4, k4));
  CHECK(!rings_isomorphic(z4, v4));
  CHECK(!rings_isomorphic(k4, v4));
  CHECK(rings_isomorphic(z4, z4));

  FiniteRing big = build_ring_named("GF(4) x GF(5)");
  CHECK(big.n == 20);
  check_ring_axioms(big);
  CHECK(big.units.size() == 12);
}

TEST_CASE("size cap") {
  CHECK_THROWS_AS(build_ring_named("Z/5000"), CapError);
  CHECK_THROWS_AS(build_ring_named("Z/100 x Z/100"), CapError);
  CHECK_NOTHROW(build_ring_named("Z/100 x Z/40"));
  CHECK_THROWS_AS(build_ring_named("Z/10", 8), CapError);
}

TEST_CASE("unit data: square classes and roots of unity") {
  FiniteRing z12 = build_ring_named("Z/12");
  UnitData u = unit_data(z12);
  CHECK(u.units == std::vector<Elem>{1, 5, 7, 11});
  CHECK(u.unit_squares == std::vector<Elem>{1});
  CHECK(u.square_classes.order() == 4);
  CHECK(u.unit_group.same_factors(abgroup_from_factors({2, 2})));
  // four distinct classes
  std::set<std::size_t> cls;
  for (Elem a : u.units) cls.insert(u.square_class(a));
  CHECK(cls.size() == 4);
  CHECK(u.class_reps.size() == 4);
  CHECK(u.class_reps[0] == 1);

  FiniteRing z8 = build_ring_named("Z/8");
  UnitData u8 = unit_data(z8);
  CHECK(u8.mu2 == std::vector<Elem>{1, 3, 5, 7});
  CHECK(u8.mu2.size() == 4);

  FiniteRing f5 = build_ring_named("GF(5)");
  UnitData u5 = unit_data(f5);
  CHECK(u5.unit_group.same_factors(abgroup_from_factors({4})));
  CHECK(u5.square_classes.order() == 2);
  CHECK(u5.unit_squares == std::vector<Elem>{1, 4});
  CHECK(u5.square_class(1) == u5.square_class(4));
  CHECK(u5.square_class(2) == u5.square_class(3));
  CHECK(u5.square_class(1) != u5.square_class(2));

  FiniteRing f9 = build_ring_named("GF(9)");
  CHECK(unit_data(f9).unit_group.same_factors(abgroup_from_factors({8})));
}

TEST_CASE("square-class group is always elementary abelian of exponent 2") {
  for (const char* name :
       {"Z/4", "Z/8", "Z/9", "Z/12", "Z/25", "Z/27", "GF(2)", "GF(3)", "GF(4)",
        "GF(5)", "GF(7)", "GF(8)", "GF(9)", "F2[t]/t^2", "Z/2 x Z/2",
        "Z/6", "GF(4) x GF(5)"}) {
    UnitData u = unit_data(build_ring_named(name));
    for (const Int& f : u.square_classes.factors) CHECK(f == 2);
  }
}

TEST_CASE("n-torsion of the unit group") {
  FiniteRing f7 = build_ring_named("GF(7)");
  CHECK(mu_n(f7, 2) == std::vector<Elem>{1, 6});
  CHECK(mu_n(f7, 3) == std::vector<Elem>{1, 2, 4});
  CHECK(mu_n(f7, 6).size() == 6);
  CHECK(mu_n(f7, 1) == std::vector<Elem>{1});
}

TEST_CASE("w set") {
  CHECK(w_set(build_ring_named("GF(5)")) == std::vector<Elem>{2, 3, 4});
  CHECK(w_set(build_ring_named("Z/9")) == std::vector<Elem>{2, 5, 8});
  CHECK(w_set(build_ring_named("GF(2)")).empty());
  CHECK(w_set(build_ring_named("GF(3)")) == std::vector<Elem>{2});
  // every w and 1-w is a unit; 0,1 excluded
  for (const char* name : {"GF(7)", "Z/25", "GF(4) x GF(5)"}) {
    FiniteRing r = build_ring_named(name);
    std::vector<Elem> w = w_set(r);
    for (Elem a : w) {
      CHECK(r.is_unit(a));
      CHECK(r.is_unit(r.sub(r.one, a)));
      CHECK(a != r.zero);
      CHECK(a != r.one);
    }
  }
}

TEST_CASE("local decomposition") {
  {
    LocalDecomposition d = local_decomposition(build_ring_named("Z/12"));
    REQUIRE(d.factors.size() == 2);
    std::multiset<std::size_t> sizes{d.factors[0].ring.n, d.factors[1].ring.n};
    CHECK(sizes == std::multiset<std::size_t>{3, 4});
    std::multiset<std::size_t> residues{d.factors[0].residue_size,
                                        d.factors[1].residue_size};
    CHECK(residues == std::multiset<std::size_t>{2, 3});
    CHECK(!d.universal);
    FiniteRing z4 = build_ring_named("Z/4"), z3 = build_ring_named("Z/3");
    for (const auto& f : d.factors)
      CHECK((rings_isomorphic(f.ring, z4) || rings_isomorphic(f.ring, z3)));
  }
  {
    LocalDecomposition d = local_decomposition(build_ring_named("GF(25)"));
    REQUIRE(d.factors.size() == 1);
    CHECK(d.factors[0].residue_size == 25);
    CHECK(d.jacobson == std::vector<Elem>{0});
    CHECK(d.universal);
  }
  {
    LocalDecomposition d = local_decomposition(build_ring_named("Z/8"));
    REQUIRE(d.factors.size() == 1);
    CHECK(d.factors[0].residue_size == 2);
    CHECK(d.jacobson == std::vector<Elem>{0, 2, 4, 6});
    CHECK(d.universal);
  }
  {
    CHECK(!local_decomposition(build_ring_named("Z/2 x Z/2")).universal);
    CHECK(!local_decomposition(build_ring_named("Z/6")).universal);
    CHECK(local_decomposition(build_ring_named("GF(4) x GF(5)")).universal);
    CHECK(local_decomposition(build_ring_named("Z/9")).universal);
  }
  // factor sizes multiply to |A|; unit counts multiply to |A^x|
  for (const char* name : {"Z/12", "Z/6", "GF(4) x GF(5)", "Z/8", "Z/2 x Z/6"}) {
    FiniteRing r = build_ring_named(name);
    LocalDecomposition d = local_decomposition(r);
    std::size_t prod = 1, uprod = 1;
    for (const auto& f : d.factors) {
      prod *= f.ring.n;
      uprod *= f.ring.units.size();
    }
    CHECK(prod == r.n);
    CHECK(uprod == r.units.size());
  }
}

TEST_CASE("m subgroup and its quotient") {
  {
    AddQuotient q = m_subgroup(build_ring_named("Z/4"));
    CHECK(q.subgroup.elems == std::vector<Elem>{0});
    CHECK(q.structure.same_factors(abgroup_from_factors({4})));
  }
  {
    AddQuotient q = m_subgroup(build_ring_named("GF(4)"));
    CHECK(q.subgroup.elems.size() == 4);
    CHECK(q.structure.is_trivial());
  }
  {
    AddQuotient q = m_subgroup(build_ring_named("GF(3)"));
    CHECK(q.subgroup.elems == std::vector<Elem>{0});
    CHECK(q.structure.same_factors(abgroup_from_factors({3})));
  }
}

TEST_CASE("coinvariant quotient of the additive group") {
  CHECK(a_lower(build_ring_named("GF(5)")).structure.is_trivial());
  CHECK(a_lower(build_ring_named("Z/8"))
            .structure.same_factors(abgroup_from_factors({8})));
  CHECK(a_lower(build_ring_named("GF(2)"))
            .structure.same_factors(abgroup_from_factors({2})));
  // all residue fields larger than 3 force triviality
  for (const char* name : {"GF(5)", "GF(7)", "GF(9)", "Z/25", "Z/49"})
    CHECK(a_lower(build_ring_named(name)).structure.is_trivial());
  // the relation subgroup sits inside M
  for (const char* name : {"Z/4", "Z/8", "Z/9", "GF(4)", "Z/12", "F2[t]/t^2"}) {
    FiniteRing r = build_ring_named(name);
    AddQuotient aq = a_lower(r);
    AddQuotient mq = m_subgroup(r);
    for (Elem e : aq.subgroup.elems) CHECK(mq.subgroup.contains(e));
  }
}

TEST_CASE("tilde extension sizes") {
  CHECK(tilde_extension(6).same_factors(abgroup_from_factors({12})));
  CHECK(tilde_extension(5).same_factors(abgroup_from_factors({5})));
  CHECK(tilde_extension(1).is_trivial());
  CHECK(tilde_extension(2).same_factors(abgroup_from_factors({4})));
  CHECK(tilde_extension(8).same_factors(abgroup_from_factors({16})));
}

TEST_CASE("abelian structure recovered from tables") {
  FiniteRing z6 = build_ring_named("Z/6");
  std::vector<Elem> all{0, 1, 2, 3, 4, 5};
  auto addop = [&z6](Elem a, Elem b) { return z6.add(a, b); };
  TableGroup tg = abelian_table_group(all, addop, 0);
  CHECK(tg.structure.same_factors(abgroup_from_factors({6})));
  CHECK(tg.same_class(2, 2));
  CHECK(!tg.same_class(2, 3));

  // quotient Z/6 / <2> = Z/2
  TableGroup tq = abelian_table_group(all, addop, 0, {2});
  CHECK(tq.structure.same_factors(abgroup_from_factors({2})));
  CHECK(tq.same_class(0, 2));
  CHECK(tq.same_class(1, 3));
  CHECK(!tq.same_class(0, 1));

  // multiplicative: units of Z/8 form Z/2 x Z/2
  FiniteRing z8 = build_ring_named("Z/8");
  auto mulop = [&z8](Elem a, Elem b) { return z8.mul(a, b); };
  TableGroup tu = abelian_table_group(z8.units, mulop, 1);
  CHECK(tu.structure.same_factors(abgroup_from_factors({2, 2})));
}

TEST_CASE("unit counts and w sets factor through products") {
  FiniteRing p = build_ring_named("Z/2 x Z/3");
  FiniteRing z6 = build_ring_named("Z/6");
  CHECK(p.units.size() == z6.units.size());
  CHECK(w_set(p).size() == w_set(z6).size());
  UnitData up = unit_data(p), u6 = unit_data(z6);
  CHECK(up.square_classes.same_factors(u6.square_classes));
  CHECK(up.unit_group.same_factors(u6.unit_group));

  FiniteRing q = build_ring_named("GF(4) x GF(5)");
  UnitData uq = unit_data(q);
  CHECK(uq.unit_group.same_factors(abgroup_from_factors({3, 4})));
  CHECK(w_set(q).size() == 2 * 3);  // |W(GF(4))| * |W(GF(5))|
}

TEST_CASE("exhaustive ring axioms on every shipped family member") {
  for (const char* name :
       {"GF(2)", "GF(3)", "GF(4)", "GF(5)", "GF(7)", "GF(8)", "GF(9)", "Z/4",
        "Z/8", "F2[t]/t^2", "Z/9", "Z/25", "Z/27", "Z/6", "Z/12", "Z/2 x Z/2",
        "GF(4) x GF(5)"}) {
    FiniteRing r = build_ring_named(name);
    if (r.n <= 64) check_ring_axioms(r);
  }
}
