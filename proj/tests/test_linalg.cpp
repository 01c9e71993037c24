#include "doctest.h"
#include "e2hom/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

using namespace e2hom;

namespace {

// --- independent oracle: invariant factors via gcds of k-by-k minors ---

Int det_rec(const IntMatrix& m, std::vector<std::size_t> rows,
            std::vector<std::size_t> cols) {
  std::size_t n = rows.size();
  if (n == 1) return m.at(rows[0], cols[0]);
  Int acc = 0;
  for (std::size_t k = 0; k < n; k++) {
    const Int& v = m.at(rows[0], cols[k]);
    if (v == 0) continue;
    std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
    std::vector<std::size_t> sub_cols;
    for (std::size_t j = 0; j < n; j++)
      if (j != k) sub_cols.push_back(cols[j]);
    Int term = v * det_rec(m, sub_rows, sub_cols);
    acc += (k % 2 == 0) ? term : -term;
  }
  return acc;
}

void combos(std::size_t n, std::size_t k,
            const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> c(k);
  std::iota(c.begin(), c.end(), 0);
  for (;;) {
    f(c);
    std::size_t i = k;
    while (i > 0 && c[i - 1] == n - k + i - 1) i--;
    if (i == 0) return;
    c[i - 1]++;
    for (std::size_t j = i; j < k; j++) c[j] = c[j - 1] + 1;
  }
}

// d_k = gcd of all k-by-k minors; invariant factor f_k = d_k / d_{k-1}
std::vector<Int> oracle_invariant_factors(const IntMatrix& m) {
  std::vector<Int> d{1};
  std::size_t lim = std::min(m.rows, m.cols);
  for (std::size_t k = 1; k <= lim; k++) {
    Int g = 0;
    combos(m.rows, k, [&](const std::vector<std::size_t>& rs) {
      combos(m.cols, k, [&](const std::vector<std::size_t>& cs) {
        Int dt = det_rec(m, rs, cs);
        if (dt != 0) g = int_gcd(g, dt);
      });
    });
    if (g == 0) break;
    d.push_back(g);
  }
  std::vector<Int> fs;
  for (std::size_t k = 1; k < d.size(); k++) fs.push_back(d[k] / d[k - 1]);
  return fs;
}

IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c,
                        int lo = -9, int hi = 9) {
  std::uniform_int_distribution<int> dist(lo, hi);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; i++)
    for (std::size_t j = 0; j < c; j++) m.at(i, j) = dist(rng);
  return m;
}

bool divisibility_chain(const std::vector<Int>& fs) {
  for (std::size_t i = 0; i + 1 < fs.size(); i++) {
    if (fs[i] == 0) return fs[i + 1] == 0;
    if (fs[i + 1] != 0 && fs[i + 1] % fs[i] != 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("smith normal form: worked 2x2 example") {
  IntMatrix m(2, 2, {2, 4, 6, 8});
  SmithForm s = smith_normal_form(m);
  CHECK(s.rank == 2);
  CHECK(s.d.at(0, 0) == 2);
  CHECK(s.d.at(1, 1) == 4);
  CHECK(s.d.at(0, 1) == 0);
  CHECK(s.d.at(1, 0) == 0);
  CHECK(s.u.mul(m).mul(s.v) == s.d);
}

TEST_CASE("smith normal form: transform identity and chain on random input") {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 200; trial++) {
    std::uniform_int_distribution<std::size_t> sz(1, 5);
    IntMatrix m = random_matrix(rng, sz(rng), sz(rng));
    SmithForm s = smith_normal_form(m);
    CHECK(s.u.mul(m).mul(s.v) == s.d);
    std::vector<Int> diag = s.diagonal();
    for (const Int& x : diag) CHECK(x >= 0);
    // off-diagonal zero
    for (std::size_t i = 0; i < s.d.rows; i++)
      for (std::size_t j = 0; j < s.d.cols; j++)
        if (i != j) CHECK(s.d.at(i, j) == 0);
    // zeros trail
    std::vector<Int> nz;
    for (const Int& x : diag)
      if (x != 0) nz.push_back(x);
    CHECK(nz.size() == s.rank);
    CHECK(divisibility_chain(diag));
    // agree with the minor-gcd oracle
    std::vector<Int> expect = oracle_invariant_factors(m);
    CHECK(nz == expect);
  }
}

TEST_CASE("kernel basis: row vector (1,1,1) has rank-2 kernel") {
  IntMatrix m(1, 3, {1, 1, 1});
  IntMatrix k = kernel_basis(m);
  CHECK(k.cols == 2);
  for (std::size_t j = 0; j < k.cols; j++) {
    Int s = k.at(0, j) + k.at(1, j) + k.at(2, j);
    CHECK(s == 0);
  }
}

TEST_CASE("kernel basis: columns span the kernel lattice exactly") {
  std::mt19937 rng(777);
  for (int trial = 0; trial < 100; trial++) {
    std::uniform_int_distribution<std::size_t> sz(1, 5);
    IntMatrix m = random_matrix(rng, sz(rng), sz(rng), -5, 5);
    IntMatrix k = kernel_basis(m);
    // every column maps to zero
    for (std::size_t j = 0; j < k.cols; j++) {
      std::vector<Int> v(k.rows);
      for (std::size_t i = 0; i < k.rows; i++) v[i] = k.at(i, j);
      for (const Int& y : m.apply(v)) CHECK(y == 0);
    }
    // dimension count
    SmithForm s = smith_normal_form(m);
    CHECK(k.cols == m.cols - s.rank);
    // purity: the basis is primitive, i.e. its own invariant factors are 1
    if (k.cols > 0) {
      std::vector<Int> fs = oracle_invariant_factors(k);
      for (const Int& f : fs) CHECK(f == 1);
    }
    // random integer kernel elements solve in the basis
    std::uniform_int_distribution<int> cf(-4, 4);
    if (k.cols > 0) {
      std::vector<Int> v(k.rows, 0);
      for (std::size_t j = 0; j < k.cols; j++) {
        Int c = cf(rng);
        for (std::size_t i = 0; i < k.rows; i++) v[i] += c * k.at(i, j);
      }
      auto sol = solve_in_lattice(k, v);
      REQUIRE(sol.has_value());
    }
  }
}

TEST_CASE("normalize_factors") {
  CHECK(normalize_factors({2, 3}) == std::vector<Int>{6});
  CHECK(normalize_factors({4, 6}) == std::vector<Int>{2, 12});
  CHECK(normalize_factors({1, 1, 5}) == std::vector<Int>{5});
  CHECK(normalize_factors({0, 2, 0}) == std::vector<Int>{2, 0, 0});
  CHECK(normalize_factors({}) == std::vector<Int>{});
  CHECK(normalize_factors({2, 2, 2}) == std::vector<Int>{2, 2, 2});
  CHECK(normalize_factors({6, 4, 10}) == std::vector<Int>{2, 2, 60});
}

TEST_CASE("quotient_structure: worked examples") {
  {
    IntMatrix rel(1, 1, {3});
    AbGroup g = quotient_structure(1, rel);
    CHECK(g.describe() == "Z/3");
    CHECK(g.order() == 3);
  }
  {
    IntMatrix rel(2, 2, {2, 0, 0, 0});
    AbGroup g = quotient_structure(2, rel);
    CHECK(g.describe() == "Z/2 + Z");
    CHECK(g.order() == 0);
    CHECK(g.free_rank() == 1);
  }
  {
    IntMatrix rel(2, 0);
    AbGroup g = quotient_structure(2, rel);
    CHECK(g.describe() == "Z + Z");
  }
  {
    IntMatrix rel = IntMatrix::identity(3);
    AbGroup g = quotient_structure(3, rel);
    CHECK(g.is_trivial());
    CHECK(g.describe() == "0");
  }
}

TEST_CASE("quotient_structure agrees with the minor-gcd oracle") {
  std::mt19937 rng(424242);
  for (int trial = 0; trial < 150; trial++) {
    std::uniform_int_distribution<std::size_t> sz(1, 5);
    std::size_t n = sz(rng), k = sz(rng);
    IntMatrix rel = random_matrix(rng, n, k);
    AbGroup g = quotient_structure(n, rel);
    std::vector<Int> expect = oracle_invariant_factors(rel);
    std::size_t rank = expect.size();
    std::erase(expect, Int(1));
    for (std::size_t i = 0; i < n - rank; i++) expect.push_back(0);
    CHECK(g.factors == normalize_factors(expect));
  }
}

TEST_CASE("quotient projection kills exactly the relation lattice") {
  std::mt19937 rng(999);
  std::uniform_int_distribution<int> cf(-3, 3);
  for (int trial = 0; trial < 100; trial++) {
    std::uniform_int_distribution<std::size_t> sz(1, 5);
    std::size_t n = sz(rng), k = sz(rng);
    IntMatrix rel = random_matrix(rng, n, k, -6, 6);
    AbGroup g = quotient_structure(n, rel);
    // projections of relation columns vanish
    for (std::size_t j = 0; j < k; j++) {
      std::vector<Int> v(n);
      for (std::size_t i = 0; i < n; i++) v[i] = rel.at(i, j);
      for (const Int& c : g.project(v)) CHECK(c == 0);
    }
    // x and x + (relation combo) project equal
    std::vector<Int> x(n), y(n);
    for (std::size_t i = 0; i < n; i++) x[i] = cf(rng);
    y = x;
    for (std::size_t j = 0; j < k; j++) {
      Int c = cf(rng);
      for (std::size_t i = 0; i < n; i++) y[i] += c * rel.at(i, j);
    }
    CHECK(g.project_equal(x, y));
    // a vector projecting to zero must lie in the lattice
    std::vector<Int> p = g.project(x);
    bool zero = std::all_of(p.begin(), p.end(),
                            [](const Int& c) { return c == 0; });
    auto sol = solve_in_lattice(rel, x);
    CHECK(zero == sol.has_value());
  }
}

TEST_CASE("solve_in_lattice: worked examples") {
  {
    IntMatrix b(2, 2, {2, 0, 0, 3});
    auto sol = solve_in_lattice(b, {4, 3});
    REQUIRE(sol.has_value());
    CHECK((*sol)[0] == 2);
    CHECK((*sol)[1] == 1);
  }
  {
    IntMatrix b(2, 1, {1, 1});
    auto sol = solve_in_lattice(b, {1, 0});
    CHECK(!sol.has_value());
  }
  {
    IntMatrix b(2, 1, {2, 4});
    CHECK(!solve_in_lattice(b, {1, 2}).has_value());
    auto sol = solve_in_lattice(b, {6, 12});
    REQUIRE(sol.has_value());
    CHECK((*sol)[0] == 3);
  }
}

TEST_CASE("solve_in_lattice round-trips random combinations") {
  std::mt19937 rng(31337);
  std::uniform_int_distribution<int> cf(-5, 5);
  for (int trial = 0; trial < 150; trial++) {
    std::uniform_int_distribution<std::size_t> sz(1, 5);
    std::size_t n = sz(rng), k = sz(rng);
    IntMatrix b = random_matrix(rng, n, k, -7, 7);
    std::vector<Int> coeff(k), target(n, 0);
    for (std::size_t j = 0; j < k; j++) coeff[j] = cf(rng);
    for (std::size_t j = 0; j < k; j++)
      for (std::size_t i = 0; i < n; i++) target[i] += coeff[j] * b.at(i, j);
    auto sol = solve_in_lattice(b, target);
    REQUIRE(sol.has_value());
    std::vector<Int> back(n, 0);
    for (std::size_t j = 0; j < k; j++)
      for (std::size_t i = 0; i < n; i++) back[i] += (*sol)[j] * b.at(i, j);
    CHECK(back == target);
  }
}

TEST_CASE("echelon compression preserves the column lattice") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 60; trial++) {
    std::uniform_int_distribution<std::size_t> sz(1, 5);
    std::size_t n = sz(rng), k = sz(rng) + 3;
    IntMatrix m = random_matrix(rng, n, k, -6, 6);
    Echelon e(n);
    std::vector<Int> v(n);
    for (std::size_t j = 0; j < k; j++) {
      for (std::size_t i = 0; i < n; i++) v[i] = m.at(i, j);
      e.insert(v);
    }
    IntMatrix w = e.to_matrix();
    CHECK(w.cols <= n);
    // every original column solves in w; every w column solves in m
    for (std::size_t j = 0; j < k; j++) {
      std::vector<Int> c(n);
      for (std::size_t i = 0; i < n; i++) c[i] = m.at(i, j);
      CHECK(solve_in_lattice(w, c).has_value());
    }
    for (std::size_t j = 0; j < w.cols; j++) {
      std::vector<Int> c(n);
      for (std::size_t i = 0; i < n; i++) c[i] = w.at(i, j);
      CHECK(solve_in_lattice(m, c).has_value());
    }
  }
}

TEST_CASE("sparse rank/factors matches dense smith form") {
  std::mt19937 rng(5150);
  std::uniform_int_distribution<int> val(-4, 4);
  std::uniform_real_distribution<double> keep(0.0, 1.0);
  for (int trial = 0; trial < 60; trial++) {
    std::uniform_int_distribution<std::size_t> sz(1, 12);
    std::size_t r = sz(rng), c = sz(rng);
    IntMatrix dm(r, c);
    SparseMat sm(r, c);
    for (std::size_t i = 0; i < r; i++)
      for (std::size_t j = 0; j < c; j++)
        if (keep(rng) < 0.3) {
          int v = val(rng);
          dm.at(i, j) = v;
          sm.add(i, j, v);
        }
    RankFactors rf = sparse_rank_factors(sm);
    SmithForm s = smith_normal_form(dm);
    CHECK(rf.rank == s.rank);
    std::vector<Int> expect;
    for (const Int& d : s.diagonal())
      if (d != 0) expect.push_back(d);
    CHECK(rf.factors == normalize_factors(expect));
  }
}

TEST_CASE("abgroup helpers") {
  AbGroup a = abgroup_from_factors({2, 4});
  AbGroup b = abgroup_from_factors({3});
  AbGroup s = direct_sum(a, b);
  CHECK(s.factors == std::vector<Int>{2, 12});
  CHECK(s.order() == 24);
  CHECK(a.same_factors(abgroup_from_factors({4, 2})));
  CHECK(!a.same_factors(b));
  CHECK(abgroup_from_factors({0}).describe() == "Z");
  CHECK(abgroup_from_factors({2, 0}).free_rank() == 1);
}
