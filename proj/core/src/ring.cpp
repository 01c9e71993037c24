#include "e2hom/ring.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace e2hom {

// --- spec parsing ------------------------------------------------------------

namespace {

struct Cursor {
  const std::string& s;
  std::size_t i = 0;

  void skip_ws() {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) i++;
  }
  bool lit(const char* t) {
    std::size_t j = i, k = 0;
    while (t[k]) {
      if (j >= s.size() || s[j] != t[k]) return false;
      j++;
      k++;
    }
    i = j;
    return true;
  }
  std::uint64_t uint(const char* what) {
    skip_ws();
    std::size_t start = i;
    if (i >= s.size() || !std::isdigit((unsigned char)s[i]))
      throw ParseError(std::string("expected ") + what, i);
    std::uint64_t v = 0;
    while (i < s.size() && std::isdigit((unsigned char)s[i])) {
      v = v * 10 + (s[i] - '0');
      if (v > 100000000) throw ParseError("number too large", start);
      i++;
    }
    return v;
  }
};

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; d++)
    if (n % d == 0) return false;
  return true;
}

// q = p^d with p prime, d >= 1; returns false otherwise
bool prime_power(std::uint64_t q, std::uint64_t& p, std::uint64_t& d) {
  if (q < 2) return false;
  std::uint64_t f = 2;
  while (f * f <= q && q % f != 0) f++;
  if (f * f > q) f = q;  // q prime
  p = f;
  d = 0;
  while (q > 1) {
    if (q % p != 0) return false;
    q /= p;
    d++;
  }
  return true;
}

RingAtom parse_atom(Cursor& c) {
  c.skip_ws();
  std::size_t at = c.i;
  RingAtom a{};
  if (c.lit("Z/")) {
    a.kind = RingAtom::Kind::modular;
    std::size_t num_at = c.i;
    a.n = c.uint("modulus");
    if (a.n < 2) throw ParseError("modulus must be at least 2", num_at);
    return a;
  }
  if (c.lit("GF(")) {
    a.kind = RingAtom::Kind::field;
    std::size_t num_at = c.i;
    std::uint64_t q = c.uint("field order");
    if (!prime_power(q, a.p, a.d))
      throw ParseError("field order must be a prime power", num_at);
    c.skip_ws();
    if (!c.lit(")")) throw ParseError("expected ')'", c.i);
    return a;
  }
  if (c.lit("F")) {
    a.kind = RingAtom::Kind::trunc_poly;
    std::size_t num_at = c.i;
    a.p = c.uint("characteristic");
    if (!is_prime(a.p))
      throw ParseError("characteristic must be prime", num_at);
    c.skip_ws();
    if (!c.lit("[t]/t^")) throw ParseError("expected '[t]/t^'", c.i);
    num_at = c.i;
    a.k = c.uint("nilpotency degree");
    if (a.k < 1) throw ParseError("nilpotency degree must be at least 1", num_at);
    return a;
  }
  throw ParseError("expected ring atom (Z/n, GF(q) or Fp[t]/t^k)", at);
}

}  // namespace

std::uint64_t RingAtom::size() const {
  switch (kind) {
    case Kind::modular:
      return n;
    case Kind::field: {
      std::uint64_t s = 1;
      for (std::uint64_t i = 0; i < d; i++) s *= p;
      return s;
    }
    case Kind::trunc_poly: {
      std::uint64_t s = 1;
      for (std::uint64_t i = 0; i < k; i++) s *= p;
      return s;
    }
  }
  return 0;
}

std::string RingAtom::render() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::modular:
      os << "Z/" << n;
      break;
    case Kind::field:
      os << "GF(" << size() << ")";
      break;
    case Kind::trunc_poly:
      os << "F" << p << "[t]/t^" << k;
      break;
  }
  return os.str();
}

std::string RingSpec::canonical() const {
  std::string out;
  for (std::size_t i = 0; i < atoms.size(); i++) {
    if (i) out += " x ";
    out += atoms[i].render();
  }
  return out;
}

RingSpec parse_ring_spec(const std::string& text) {
  Cursor c{text};
  RingSpec spec;
  spec.atoms.push_back(parse_atom(c));
  for (;;) {
    c.skip_ws();
    if (c.i >= text.size()) break;
    if (!c.lit("x")) throw ParseError("expected 'x' or end of input", c.i);
    spec.atoms.push_back(parse_atom(c));
  }
  return spec;
}

// --- ring construction -------------------------------------------------------

namespace {

using Poly = std::vector<std::uint32_t>;  // coefficients, index = degree

Poly poly_mod(Poly a, const Poly& f, std::uint64_t p) {
  std::size_t df = f.size() - 1;
  while (a.size() > df) {
    std::uint64_t lead = a.back();
    std::size_t shift = a.size() - 1 - df;
    if (lead != 0)
      for (std::size_t i = 0; i <= df; i++) {
        std::uint64_t v = a[shift + i] + p * p - lead * f[i] % p;
        a[shift + i] = static_cast<std::uint32_t>(v % p);
      }
    a.pop_back();
  }
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint64_t p) {
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); i++) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); j++)
      c[i + j] = static_cast<std::uint32_t>((c[i + j] + std::uint64_t(a[i]) * b[j]) % p);
  }
  return c;
}

// divides monic g into a: true iff remainder is zero
bool poly_divisible(Poly a, const Poly& g, std::uint64_t p) {
  a = poly_mod(std::move(a), g, p);
  for (auto c : a)
    if (c) return false;
  return true;
}

// enumerate monic polys of degree d by base-p digits of v in [0, p^d)
Poly monic_from_index(std::uint64_t v, std::uint64_t d, std::uint64_t p) {
  Poly f(d + 1, 0);
  for (std::uint64_t i = 0; i < d; i++) {
    f[i] = static_cast<std::uint32_t>(v % p);
    v /= p;
  }
  f[d] = 1;
  return f;
}

bool poly_irreducible(const Poly& f, std::uint64_t p) {
  std::uint64_t d = f.size() - 1;
  for (std::uint64_t dg = 1; 2 * dg <= d; dg++) {
    std::uint64_t count = 1;
    for (std::uint64_t i = 0; i < dg; i++) count *= p;
    for (std::uint64_t v = 0; v < count; v++)
      if (poly_divisible(f, monic_from_index(v, dg, p), p)) return false;
  }
  return true;
}

// least monic irreducible of degree d, ordered by coefficients read as a
// base-p integer
Poly least_irreducible(std::uint64_t d, std::uint64_t p) {
  std::uint64_t count = 1;
  for (std::uint64_t i = 0; i < d; i++) count *= p;
  for (std::uint64_t v = 0; v < count; v++) {
    Poly f = monic_from_index(v, d, p);
    if (poly_irreducible(f, p)) return f;
  }
  check(false, "no irreducible polynomial found");
  return {};
}

std::string poly_label(const Poly& c) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] == 0) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0)
      os << c[i];
    else {
      if (c[i] != 1) os << c[i];
      os << "t";
      if (i > 1) os << "^" << i;
    }
  }
  if (first) os << "0";
  return os.str();
}

Poly poly_of_id(Elem e, std::uint64_t len, std::uint64_t p) {
  Poly c(len, 0);
  std::uint64_t v = e;
  for (std::uint64_t i = 0; i < len; i++) {
    c[i] = static_cast<std::uint32_t>(v % p);
    v /= p;
  }
  return c;
}

Elem id_of_poly(const Poly& c, std::uint64_t len, std::uint64_t p) {
  std::uint64_t v = 0;
  for (std::uint64_t i = len; i-- > 0;) v = v * p + (i < c.size() ? c[i] : 0);
  return static_cast<Elem>(v);
}

void finish_tables(FiniteRing& r) {
  std::size_t n = r.n;
  r.neg_t.assign(n, 0);
  for (Elem a = 0; a < n; a++)
    for (Elem b = 0; b < n; b++)
      if (r.add(a, b) == r.zero) {
        r.neg_t[a] = b;
        break;
      }
  r.inv_t.assign(n, static_cast<Elem>(n));
  for (Elem a = 0; a < n; a++)
    for (Elem b = 0; b < n; b++)
      if (r.mul(a, b) == r.one) {
        r.inv_t[a] = b;
        break;
      }
  r.units.clear();
  for (Elem a = 0; a < n; a++)
    if (r.inv_t[a] != n) r.units.push_back(a);
}

FiniteRing build_modular(std::uint64_t n) {
  FiniteRing r;
  r.n = n;
  r.zero = 0;
  r.one = 1;
  r.add_t.resize(n * n);
  r.mul_t.resize(n * n);
  for (Elem a = 0; a < n; a++)
    for (Elem b = 0; b < n; b++) {
      r.add_t[a * n + b] = static_cast<Elem>((std::uint64_t(a) + b) % n);
      r.mul_t[a * n + b] = static_cast<Elem>(std::uint64_t(a) * b % n);
    }
  r.labels.resize(n);
  for (Elem a = 0; a < n; a++) r.labels[a] = std::to_string(a);
  finish_tables(r);
  return r;
}

// shared by GF(p^d) (reduce by irreducible f) and F_p[t]/t^k (truncate)
FiniteRing build_poly_ring(std::uint64_t p, std::uint64_t len, const Poly* f) {
  std::uint64_t n = 1;
  for (std::uint64_t i = 0; i < len; i++) n *= p;
  FiniteRing r;
  r.n = n;
  r.zero = 0;
  r.one = 1;
  r.add_t.resize(n * n);
  r.mul_t.resize(n * n);
  std::vector<Poly> rep(n);
  for (Elem a = 0; a < n; a++) rep[a] = poly_of_id(a, len, p);
  for (Elem a = 0; a < n; a++)
    for (Elem b = 0; b < n; b++) {
      Poly s(len);
      for (std::uint64_t i = 0; i < len; i++)
        s[i] = static_cast<std::uint32_t>((rep[a][i] + std::uint64_t(rep[b][i])) % p);
      r.add_t[a * n + b] = id_of_poly(s, len, p);
      Poly m = poly_mul(rep[a], rep[b], p);
      if (f) m = poly_mod(std::move(m), *f, p);
      r.mul_t[a * n + b] = id_of_poly(m, len, p);  // truncation via len
    }
  r.labels.resize(n);
  for (Elem a = 0; a < n; a++) r.labels[a] = poly_label(rep[a]);
  finish_tables(r);
  return r;
}

FiniteRing build_atom(const RingAtom& a) {
  switch (a.kind) {
    case RingAtom::Kind::modular:
      return build_modular(a.n);
    case RingAtom::Kind::field: {
      if (a.d == 1) {
        FiniteRing r = build_modular(a.p);
        return r;
      }
      Poly f = least_irreducible(a.d, a.p);
      return build_poly_ring(a.p, a.d, &f);
    }
    case RingAtom::Kind::trunc_poly:
      return build_poly_ring(a.p, a.k, nullptr);
  }
  check(false, "unknown atom kind");
  return {};
}

FiniteRing build_product(const std::vector<FiniteRing>& parts) {
  std::size_t m = parts.size();
  std::size_t n = 1;
  for (const auto& r : parts) n *= r.n;
  // mixed-radix digits per id, first part most significant
  std::vector<std::vector<Elem>> digits(n, std::vector<Elem>(m));
  for (std::size_t e = 0; e < n; e++) {
    std::size_t v = e;
    for (std::size_t i = m; i-- > 0;) {
      digits[e][i] = static_cast<Elem>(v % parts[i].n);
      v /= parts[i].n;
    }
  }
  auto compose = [&](const std::vector<Elem>& dg) {
    std::size_t v = 0;
    for (std::size_t i = 0; i < m; i++) v = v * parts[i].n + dg[i];
    return static_cast<Elem>(v);
  };
  FiniteRing r;
  r.n = n;
  r.add_t.resize(n * n);
  r.mul_t.resize(n * n);
  std::vector<Elem> tmp(m);
  for (Elem a = 0; a < n; a++)
    for (Elem b = 0; b < n; b++) {
      for (std::size_t i = 0; i < m; i++)
        tmp[i] = parts[i].add(digits[a][i], digits[b][i]);
      r.add_t[a * n + b] = compose(tmp);
      for (std::size_t i = 0; i < m; i++)
        tmp[i] = parts[i].mul(digits[a][i], digits[b][i]);
      r.mul_t[a * n + b] = compose(tmp);
    }
  std::vector<Elem> zs(m), os(m);
  for (std::size_t i = 0; i < m; i++) {
    zs[i] = parts[i].zero;
    os[i] = parts[i].one;
  }
  r.zero = compose(zs);
  r.one = compose(os);
  r.labels.resize(n);
  for (Elem e = 0; e < n; e++) {
    std::string l = "(";
    for (std::size_t i = 0; i < m; i++) {
      if (i) l += ",";
      l += parts[i].labels[digits[e][i]];
    }
    l += ")";
    r.labels[e] = l;
  }
  finish_tables(r);
  return r;
}

}  // namespace

Elem FiniteRing::inv(Elem a) const {
  check(is_unit(a), "inverse of a non-unit");
  return inv_t[a];
}

Elem FiniteRing::pow(Elem a, std::uint64_t e) const {
  Elem acc = one, base = a;
  while (e) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

Elem FiniteRing::int_elem(long long k) const {
  bool negate = k < 0;
  std::uint64_t e = negate ? static_cast<std::uint64_t>(-k) : static_cast<std::uint64_t>(k);
  Elem acc = zero, base = one;
  while (e) {
    if (e & 1) acc = add(acc, base);
    base = add(base, base);
    e >>= 1;
  }
  return negate ? neg(acc) : acc;
}

FiniteRing build_ring(const RingSpec& spec, std::size_t size_cap) {
  check(!spec.atoms.empty(), "empty ring spec");
  std::uint64_t total = 1;
  for (const auto& a : spec.atoms) {
    std::uint64_t s = a.size();
    if (s == 0 || total > size_cap / s)
      throw CapError("ring size exceeds cap " + std::to_string(size_cap) +
                     " for " + spec.canonical());
    total *= s;
  }
  std::vector<FiniteRing> parts;
  parts.reserve(spec.atoms.size());
  for (const auto& a : spec.atoms) parts.push_back(build_atom(a));
  FiniteRing r =
      parts.size() == 1 ? std::move(parts[0]) : build_product(parts);
  r.name = spec.canonical();
  return r;
}

FiniteRing build_ring_named(const std::string& text, std::size_t size_cap) {
  return build_ring(parse_ring_spec(text), size_cap);
}

// --- brute-force ring isomorphism ---------------------------------------------

namespace {

struct IsoSearch {
  const FiniteRing& a;
  const FiniteRing& b;
  std::vector<Elem> fwd, bwd;  // value n = unassigned
  std::vector<Elem> trail;

  bool assign(Elem x, Elem y) {
    if (fwd[x] != a.n) return fwd[x] == y;
    if (bwd[y] != a.n) return false;
    fwd[x] = y;
    bwd[y] = x;
    trail.push_back(x);
    return true;
  }

  // close the partial map under both tables; false on conflict
  bool close() {
    for (std::size_t done = 0; done < trail.size(); done++) {
      Elem x = trail[done], y = fwd[x];
      for (Elem u = 0; u < a.n; u++) {
        if (fwd[u] == a.n) continue;
        Elem v = fwd[u];
        if (!assign(a.add(x, u), b.add(y, v))) return false;
        if (!assign(a.add(u, x), b.add(v, y))) return false;
        if (!assign(a.mul(x, u), b.mul(y, v))) return false;
        if (!assign(a.mul(u, x), b.mul(v, y))) return false;
      }
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail.size() > mark) {
      Elem x = trail.back();
      trail.pop_back();
      bwd[fwd[x]] = static_cast<Elem>(a.n);
      fwd[x] = static_cast<Elem>(a.n);
    }
  }

  bool dfs() {
    Elem x = 0;
    while (x < a.n && fwd[x] != a.n) x++;
    if (x == a.n) return true;
    for (Elem y = 0; y < a.n; y++) {
      if (bwd[y] != a.n) continue;
      std::size_t mark = trail.size();
      if (assign(x, y) && close() && dfs()) return true;
      undo(mark);
    }
    return false;
  }
};

}  // namespace

bool rings_isomorphic(const FiniteRing& a, const FiniteRing& b) {
  if (a.n != b.n) return false;
  IsoSearch s{a, b,
              std::vector<Elem>(a.n, static_cast<Elem>(a.n)),
              std::vector<Elem>(a.n, static_cast<Elem>(a.n)),
              {}};
  if (!s.assign(a.zero, b.zero) || !s.assign(a.one, b.one) || !s.close())
    return false;
  return s.dfs();
}

// --- abelian structure from tables --------------------------------------------

const std::vector<Int>& TableGroup::coord(Elem e) const {
  auto it = coords.find(e);
  check(it != coords.end(), "element outside the table group");
  return it->second;
}

TableGroup abelian_table_group(const std::vector<Elem>& elems,
                               const std::function<Elem(Elem, Elem)>& op,
                               Elem id, const std::vector<Elem>& kill) {
  std::set<Elem> universe(elems.begin(), elems.end());
  check(universe.count(id) != 0, "table group: identity not listed");

  std::map<Elem, std::vector<Int>> word;  // element -> word vector in Z^s
  std::vector<Elem> order{id};
  std::vector<Elem> gens;
  word[id] = {};

  auto padded = [&](const std::vector<Int>& v) {
    std::vector<Int> w = v;
    w.resize(gens.size(), 0);
    return w;
  };

  for (;;) {
    bool grew = true;
    while (grew) {
      grew = false;
      for (std::size_t idx = 0; idx < order.size(); idx++) {
        Elem x = order[idx];
        for (std::size_t i = 0; i < gens.size(); i++) {
          Elem y = op(x, gens[i]);
          check(universe.count(y) != 0, "table group: not closed under op");
          if (word.count(y)) continue;
          std::vector<Int> v = padded(word[x]);
          v[i] += 1;
          word.emplace(y, std::move(v));
          order.push_back(y);
          grew = true;
        }
      }
    }
    if (order.size() == universe.size()) break;
    // first unreached element becomes the next generator
    for (Elem e : elems)
      if (!word.count(e)) {
        gens.push_back(e);
        std::vector<Int> v(gens.size(), 0);
        v.back() = 1;
        word.emplace(e, std::move(v));
        order.push_back(e);
        break;
      }
  }

  std::size_t s = gens.size();
  std::vector<std::vector<Int>> rels;
  for (Elem x : order)
    for (std::size_t i = 0; i < s; i++) {
      Elem y = op(x, gens[i]);
      std::vector<Int> r = padded(word[x]);
      r[i] += 1;
      const std::vector<Int>& wy = word[y];
      for (std::size_t j = 0; j < wy.size(); j++) r[j] -= wy[j];
      bool zero = std::all_of(r.begin(), r.end(),
                              [](const Int& c) { return c == 0; });
      if (!zero) rels.push_back(std::move(r));
    }
  for (Elem k : kill) {
    check(universe.count(k) != 0, "table group: kill element not listed");
    std::vector<Int> r = padded(word[k]);
    bool zero = std::all_of(r.begin(), r.end(),
                            [](const Int& c) { return c == 0; });
    if (!zero) rels.push_back(std::move(r));
  }

  IntMatrix rm(s, rels.size());
  for (std::size_t j = 0; j < rels.size(); j++)
    for (std::size_t i = 0; i < s; i++) rm.at(i, j) = rels[j][i];

  TableGroup tg;
  tg.elems = std::move(order);
  tg.gens = std::move(gens);
  tg.structure = quotient_structure(s, rm);
  for (auto& [e, v] : word) {
    std::vector<Int> w = v;
    w.resize(s, 0);
    tg.coords.emplace(e, tg.structure.project(w));
  }
  return tg;
}

// --- unit data -----------------------------------------------------------------

std::size_t UnitData::square_class(Elem a) const {
  check(a < class_of.size() && class_of[a] != npos,
        "square class of a non-unit");
  return class_of[a];
}

UnitData unit_data(const FiniteRing& r) {
  UnitData u;
  u.units = r.units;
  std::set<Elem> sq;
  for (Elem a : u.units) sq.insert(r.mul(a, a));
  u.unit_squares.assign(sq.begin(), sq.end());

  auto mul = [&r](Elem a, Elem b) { return r.mul(a, b); };
  u.unit_group = abelian_table_group(u.units, mul, r.one).structure;

  TableGroup classes = abelian_table_group(u.units, mul, r.one, u.unit_squares);
  u.square_classes = classes.structure;

  u.class_of.assign(r.n, UnitData::npos);
  std::map<std::vector<Int>, std::size_t> index;
  for (Elem a : u.units) {  // ascending, so reps are minimal
    const std::vector<Int>& c = classes.coord(a);
    auto [it, fresh] = index.emplace(c, u.class_reps.size());
    if (fresh) u.class_reps.push_back(a);
    u.class_of[a] = it->second;
  }

  for (Elem a : u.units)
    if (r.mul(a, a) == r.one) u.mu2.push_back(a);
  return u;
}

std::vector<Elem> mu_n(const FiniteRing& r, std::uint64_t n) {
  std::vector<Elem> out;
  for (Elem a : r.units)
    if (r.pow(a, n) == r.one) out.push_back(a);
  return out;
}

std::vector<Elem> w_set(const FiniteRing& r) {
  std::vector<Elem> out;
  for (Elem a = 0; a < r.n; a++)
    if (r.is_unit(r.mul(a, r.sub(r.one, a)))) out.push_back(a);
  return out;
}

// --- local structure -------------------------------------------------------------

namespace {

std::vector<Elem> jacobson_radical(const FiniteRing& r) {
  std::vector<Elem> j;
  for (Elem x = 0; x < r.n; x++) {
    bool in = true;
    for (Elem y = 0; y < r.n && in; y++)
      if (!r.is_unit(r.add(r.one, r.mul(x, y)))) in = false;
    if (in) j.push_back(x);
  }
  return j;
}

}  // namespace

LocalDecomposition local_decomposition(const FiniteRing& r) {
  LocalDecomposition out;
  out.jacobson = jacobson_radical(r);

  std::vector<Elem> idem;
  for (Elem e = 0; e < r.n; e++)
    if (r.mul(e, e) == e) idem.push_back(e);

  std::vector<Elem> prim;
  for (Elem e : idem) {
    if (e == r.zero) continue;
    bool ok = true;
    for (Elem f : idem) {
      Elem ef = r.mul(e, f);
      if (ef != r.zero && ef != e) {
        ok = false;
        break;
      }
    }
    if (ok) prim.push_back(e);
  }

  for (Elem e : prim) {
    LocalFactor lf;
    lf.idempotent = e;
    std::set<Elem> sub;
    for (Elem x = 0; x < r.n; x++) sub.insert(r.mul(e, x));
    lf.elements.assign(sub.begin(), sub.end());

    std::size_t m = lf.elements.size();
    std::map<Elem, Elem> dense;
    for (std::size_t i = 0; i < m; i++) dense[lf.elements[i]] = static_cast<Elem>(i);
    FiniteRing fr;
    fr.name = r.name + " | " + r.labels[e];
    fr.n = m;
    fr.zero = dense.at(r.zero);
    fr.one = dense.at(e);
    fr.add_t.resize(m * m);
    fr.mul_t.resize(m * m);
    fr.labels.resize(m);
    for (std::size_t i = 0; i < m; i++) {
      fr.labels[i] = r.labels[lf.elements[i]];
      for (std::size_t j = 0; j < m; j++) {
        fr.add_t[i * m + j] = dense.at(r.add(lf.elements[i], lf.elements[j]));
        fr.mul_t[i * m + j] = dense.at(r.mul(lf.elements[i], lf.elements[j]));
      }
    }
    finish_tables(fr);
    lf.residue_size = fr.n / jacobson_radical(fr).size();
    lf.ring = std::move(fr);
    out.factors.push_back(std::move(lf));
  }

  std::size_t small2 = 0, small3 = 0;
  for (const auto& f : out.factors) {
    if (f.residue_size == 2) small2++;
    if (f.residue_size == 3) small3++;
  }
  out.universal = !(small2 >= 2) && !(small2 >= 1 && small3 >= 1);
  return out;
}

// --- additive subgroups and quotients ---------------------------------------------

AddSubgroup additive_closure(const FiniteRing& r, std::vector<Elem> gens) {
  AddSubgroup s;
  s.member.assign(r.n, 0);
  s.member[r.zero] = 1;
  std::vector<Elem> frontier{r.zero};
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  s.gens = gens;
  for (Elem g : gens)
    if (!s.member[g]) {
      s.member[g] = 1;
      frontier.push_back(g);
    }
  std::vector<Elem> all = frontier;
  while (!frontier.empty()) {
    std::vector<Elem> next;
    for (Elem x : frontier)
      for (Elem y : all) {
        Elem z = r.add(x, y);
        if (!s.member[z]) {
          s.member[z] = 1;
          next.push_back(z);
          all.push_back(z);
        }
      }
    frontier = std::move(next);
  }
  for (Elem x = 0; x < r.n; x++)
    if (s.member[x]) s.elems.push_back(x);
  return s;
}

AddQuotient additive_quotient(const FiniteRing& r, std::vector<Elem> gens) {
  AddQuotient q;
  q.subgroup = additive_closure(r, std::move(gens));
  std::vector<Elem> all(r.n);
  for (Elem x = 0; x < r.n; x++) all[x] = x;
  auto addop = [&r](Elem a, Elem b) { return r.add(a, b); };
  TableGroup tg = abelian_table_group(all, addop, r.zero, q.subgroup.gens);
  q.structure = tg.structure;
  q.cls.resize(r.n);
  for (Elem x = 0; x < r.n; x++) q.cls[x] = tg.coord(x);
  return q;
}

AddQuotient m_subgroup(const FiniteRing& r) {
  std::set<Elem> gens;
  for (Elem a : r.units) {
    Elem c = r.sub(r.mul(a, a), r.one);
    for (Elem x = 0; x < r.n; x++) gens.insert(r.mul(x, c));
  }
  Elem three = r.int_elem(3);
  for (Elem b : r.units)
    for (Elem c : r.units) {
      Elem v = r.mul(three, r.mul(r.add(b, r.one), r.add(c, r.one)));
      gens.insert(v);
    }
  gens.erase(r.zero);
  return additive_quotient(r, std::vector<Elem>(gens.begin(), gens.end()));
}

AddQuotient a_lower(const FiniteRing& r) {
  std::set<Elem> gens;
  for (Elem a : r.units) {
    Elem c = r.sub(r.mul(a, a), r.one);
    for (Elem x = 0; x < r.n; x++) gens.insert(r.mul(x, c));
  }
  gens.erase(r.zero);
  return additive_quotient(r, std::vector<Elem>(gens.begin(), gens.end()));
}

AbGroup tilde_extension(std::uint64_t n) {
  Int g = int_gcd(Int(n) * Int(n), Int(2) * Int(n));
  return abgroup_from_factors({g});
}

}  // namespace e2hom
