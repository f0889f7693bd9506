#include "b0lab/cohomology.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "b0lab/multiplier.hpp"

namespace b0lab {

namespace {

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

unsigned log_p(std::uint64_t m, unsigned p) {
  unsigned k = 0;
  while (m > 1) {
    m /= p;
    ++k;
  }
  return k;
}

// Invariants of a finite abelian p-group from the counts |{x : p^i x = 0}|.
std::vector<std::uint64_t> invariants_from_omega(const std::vector<std::uint64_t>& omega, unsigned p) {
  std::vector<unsigned> lg;
  for (auto c : omega) lg.push_back(log_p(c, p));
  std::vector<std::uint64_t> out;
  // ge[i] = number of invariants >= p^i
  for (std::size_t i = lg.size() - 1; i >= 1; --i) {
    const unsigned ge_i = lg[i] - lg[i - 1];
    const unsigned ge_next = i + 1 < lg.size() ? lg[i + 1] - lg[i] : 0;
    for (unsigned c = ge_next; c < ge_i; ++c) out.push_back(ipow(p, static_cast<unsigned>(i)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint32_t> multiplication_table(const PcPresentation& g) {
  const std::uint64_t m = g.order();
  std::vector<Exponents> elts(m);
  for (std::uint64_t i = 0; i < m; ++i) elts[i] = g.from_index(i);
  std::vector<std::uint32_t> mul(m * m);
  for (std::uint64_t a = 0; a < m; ++a)
    for (std::uint64_t b = 0; b < m; ++b)
      mul[a * m + b] = static_cast<std::uint32_t>(g.index_of(g.multiply(elts[a], elts[b])));
  return mul;
}

std::vector<unsigned> generating_indices(const PcPresentation& g) {
  std::vector<Exponents> chosen;
  for (unsigned i = 0; i < g.size(); ++i) {
    if (!subgroup_closure(g, chosen).contains(g.generator(i))) chosen.push_back(g.generator(i));
  }
  for (std::size_t i = 0; i < chosen.size();) {
    std::vector<Exponents> rest = chosen;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
    if (subgroup_closure(g, rest).order() == g.order())
      chosen = std::move(rest);
    else
      ++i;
  }
  std::vector<unsigned> out;
  for (const auto& s : chosen) out.push_back(static_cast<unsigned>(g.index_of(s)));
  return out;
}

// Values of a character (given on the canonical generators of its domain) as
// residues mod n, for every element of the domain in the given index order.
std::vector<std::uint32_t> character_on(const Subgroup& dom, const std::vector<std::uint32_t>& gen_values,
                                        const std::vector<Exponents>& elts, const zpk::Ring& r) {
  std::vector<std::uint32_t> out;
  out.reserve(elts.size());
  for (const auto& x : elts) {
    const auto d = dom.decompose(x);
    long long s = 0;
    for (std::size_t i = 0; i < d.size(); ++i) s += static_cast<long long>(d[i]) * gen_values[i];
    out.push_back(r.reduce(s));
  }
  return out;
}

std::vector<std::uint32_t> character_residues(const Character& chi, const zpk::Ring& r) {
  const unsigned k = r.k;
  std::vector<std::uint32_t> v;
  for (const auto& x : chi.values) {
    if (x.exponent() > k) throw GuardFailure("character value outside the coefficient ring");
    v.push_back(static_cast<std::uint32_t>(x.scaled(k) % r.q));
  }
  return v;
}

// Finite abelian group Span(gens) + S / S inside (Z/q)^m, enumerated with an
// addition-by-generator table.
struct Enumeration {
  zpk::Howell rel;
  std::vector<zpk::Vec> gens;
  std::vector<zpk::Vec> reps;
  std::vector<std::vector<std::uint32_t>> coeffs;  // one coefficient vector per element
  std::vector<std::vector<std::size_t>> next;      // next[i][j] = i + gens[j]

  Enumeration(const zpk::Ring& r, std::size_t m, const std::vector<zpk::Vec>& sub, std::vector<zpk::Vec> quot,
              std::uint64_t limit)
      : rel(r, m, quot) {
    for (const auto& z : sub) {
      if (rel.contains(z)) continue;
      bool in_span = false;
      if (!gens.empty()) {
        std::vector<zpk::Vec> all = quot;
        all.insert(all.end(), gens.begin(), gens.end());
        in_span = zpk::Howell(r, m, all).contains(z);
      }
      if (!in_span) gens.push_back(rel.reduce(z));
    }
    std::map<zpk::Vec, std::size_t> index;
    reps.push_back(zpk::Vec(m, 0));
    coeffs.push_back(std::vector<std::uint32_t>(gens.size(), 0));
    index[reps[0]] = 0;
    for (std::size_t i = 0; i < reps.size(); ++i) {
      next.emplace_back(gens.size());
      for (std::size_t j = 0; j < gens.size(); ++j) {
        zpk::Vec v = reps[i];
        r.axpy(v, 1, gens[j]);
        v = rel.reduce(std::move(v));
        auto [it, fresh] = index.emplace(v, reps.size());
        if (fresh) {
          if (reps.size() >= limit) throw CapExceeded("enumeration exceeds " + std::to_string(limit) + " elements");
          reps.push_back(std::move(v));
          auto c = coeffs[i];
          c[j] = r.add(c[j], 1);
          coeffs.push_back(std::move(c));
        }
        next[i][j] = it->second;
      }
    }
  }

  std::size_t size() const { return reps.size(); }

  std::size_t add(std::size_t a, std::size_t b) const {
    for (std::size_t j = 0; j < gens.size(); ++j)
      for (std::uint32_t t = 0; t < coeffs[b][j]; ++t) a = next[a][j];
    return a;
  }

  std::size_t times(std::size_t a, std::uint64_t c) const {
    std::size_t x = 0;
    for (std::size_t j = 0; j < gens.size(); ++j) {
      const std::uint64_t steps = (static_cast<std::uint64_t>(coeffs[a][j]) * c) % rel.ring().q;
      for (std::uint64_t t = 0; t < steps; ++t) x = next[x][j];
    }
    return x;
  }

  std::uint64_t order(std::size_t a) const {
    const unsigned p = rel.ring().p;
    std::uint64_t o = 1;
    std::size_t x = a;
    while (x != 0) {
      x = times(x, p);
      o *= p;
    }
    return o;
  }

  /// Basis of the subgroup given by `members` (closed under addition): indices and orders.
  std::vector<std::pair<std::size_t, std::uint64_t>> basis(const std::vector<std::size_t>& members) const {
    const unsigned p = rel.ring().p;
    std::vector<char> span(size(), 0);
    span[0] = 1;
    std::size_t span_size = 1;
    std::vector<std::pair<std::size_t, std::uint64_t>> out;
    while (span_size < members.size()) {
      std::size_t best = 0;
      std::uint64_t best_order = 1;
      for (std::size_t y : members) {
        if (span[y]) continue;
        std::uint64_t oq = 1;
        std::size_t x = y;
        while (!span[x]) {
          x = times(x, p);
          oq *= p;
        }
        if (oq > best_order && order(y) == oq) {
          best_order = oq;
          best = y;
        }
      }
      if (best_order == 1) throw GuardFailure("basis extraction found no pure lift");
      std::vector<std::size_t> cur;
      for (std::size_t i = 0; i < size(); ++i)
        if (span[i]) cur.push_back(i);
      std::size_t multiple = 0;
      for (std::uint64_t t = 1; t < best_order; ++t) {
        multiple = add(multiple, best);
        for (std::size_t s : cur) {
          const std::size_t z = add(s, multiple);
          if (!span[z]) {
            span[z] = 1;
            ++span_size;
          }
        }
      }
      out.emplace_back(best, best_order);
    }
    return out;
  }
};

// Normalized 2-cocycles over Z/n parametrized by their values f(x, s) on a
// generating set S; f(g, h) follows along a BFS tree of right multiplication.
struct CocycleSpace {
  const PcPresentation& g;
  zpk::Ring ring;
  std::uint64_t m = 0;
  std::vector<std::uint32_t> mul;
  std::vector<unsigned> s;        // generating elements (indices)
  std::vector<std::uint32_t> order_bfs;  // non-root vertices in BFS order
  std::vector<std::uint32_t> parent;
  std::vector<std::uint32_t> via;
  std::size_t d = 0;

  CocycleSpace(const PcPresentation& grp, const zpk::Ring& r)
      : g(grp), ring(r), m(grp.order()), mul(multiplication_table(grp)), s(generating_indices(grp)) {
    d = s.size();
    parent.assign(m, 0);
    via.assign(m, 0);
    std::vector<char> seen(m, 0);
    seen[0] = 1;
    std::vector<std::uint32_t> queue{0};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const auto h = queue[qi];
      for (std::size_t j = 0; j < d; ++j) {
        const auto k = mul[h * m + s[j]];
        if (seen[k]) continue;
        seen[k] = 1;
        parent[k] = h;
        via[k] = static_cast<std::uint32_t>(j);
        queue.push_back(k);
        order_bfs.push_back(k);
      }
    }
    if (order_bfs.size() + 1 != m) throw GuardFailure("cocycle space: S does not generate G");
  }

  std::size_t dim() const { return m * d; }
  std::size_t u(std::uint64_t x, std::size_t j) const { return x * d + j; }
  bool tree_edge(std::uint64_t h, std::size_t j) const {
    const auto k = mul[h * m + s[j]];
    return k != 0 && parent[k] == h && via[k] == j;
  }

  std::vector<std::uint32_t> table(const zpk::Vec& z) const {
    std::vector<std::uint32_t> f(m * m, 0);
    for (std::uint64_t a = 0; a < m; ++a) {
      for (auto h : order_bfs) {
        const auto par = parent[h];
        const auto j = via[h];
        const std::uint64_t v = f[a * m + par] + z[u(mul[a * m + par], j)] + ring.q - z[u(par, j)];
        f[a * m + h] = static_cast<std::uint32_t>(v % ring.q);
      }
    }
    return f;
  }

  // T(a, h) as vectors in U-coordinates for fixed a.
  std::vector<zpk::Vec> rows_for(std::uint64_t a) const {
    std::vector<zpk::Vec> t(m, zpk::Vec(dim(), 0));
    for (auto h : order_bfs) {
      const auto par = parent[h];
      const auto j = via[h];
      t[h] = t[par];
      auto& x = t[h][u(mul[a * m + par], j)];
      x = ring.add(x, 1);
      auto& y = t[h][u(par, j)];
      y = ring.sub(y, 1);
    }
    return t;
  }

  // Failures of f(a,h) + f(ah,s) = f(a,hs) + f(h,s) for the given table.
  std::vector<std::uint64_t> violating_rows(const std::vector<std::uint32_t>& f) const {
    std::vector<std::uint64_t> bad;
    for (std::uint64_t a = 0; a < m; ++a) {
      bool ok = true;
      for (std::uint64_t h = 0; h < m && ok; ++h) {
        const auto ah = mul[a * m + h];
        for (std::size_t j = 0; j < d; ++j) {
          const auto hs = mul[h * m + s[j]];
          if ((f[a * m + h] + f[ah * m + s[j]]) % ring.q != (f[a * m + hs] + f[h * m + s[j]]) % ring.q) {
            ok = false;
            break;
          }
        }
      }
      if (!ok) bad.push_back(a);
    }
    return bad;
  }

  void add_rows_for(std::uint64_t a, zpk::KernelBuilder& kb, bool& shrank) const {
    const auto t = rows_for(a);
    for (std::uint64_t h = 0; h < m; ++h) {
      const auto ah = mul[a * m + h];
      for (std::size_t j = 0; j < d; ++j) {
        if (tree_edge(h, j)) continue;
        const auto hs = mul[h * m + s[j]];
        zpk::Vec row = t[h];
        ring.axpy(row, ring.q - 1, t[hs]);
        row[u(ah, j)] = ring.add(row[u(ah, j)], 1);
        row[u(h, j)] = ring.sub(row[u(h, j)], 1);
        if (ring.is_zero(row)) continue;
        if (kb.add_row(row)) shrank = true;
      }
    }
  }

  std::vector<zpk::Vec> cocycles() const {
    zpk::KernelBuilder kb(ring, dim());
    for (std::size_t j = 0; j < d; ++j) {
      zpk::Vec row(dim(), 0);
      row[u(0, j)] = 1;
      kb.add_row(row);
    }
    std::vector<std::uint64_t> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::mt19937_64 rng(0x5eed);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<char> done(m, 0);
    unsigned quiet = 0;
    for (auto a : perm) {
      bool shrank = false;
      add_rows_for(a, kb, shrank);
      done[a] = 1;
      quiet = shrank ? 0 : quiet + 1;
      if (quiet >= 2) break;
    }
    for (;;) {
      auto gens = kb.generators();
      std::vector<char> flagged(m, 0);
      bool any = false;
      for (const auto& z : gens) {
        for (auto a : violating_rows(table(z))) {
          if (done[a]) throw GuardFailure("cocycle space: processed constraint violated");
          flagged[a] = 1;
          any = true;
        }
      }
      if (!any) return gens;
      for (std::uint64_t a = 0; a < m; ++a) {
        if (!flagged[a]) continue;
        bool shrank = false;
        add_rows_for(a, kb, shrank);
        done[a] = 1;
      }
    }
  }

  std::vector<zpk::Vec> coboundaries() const {
    std::vector<zpk::Vec> out;
    for (std::uint64_t x = 1; x < m; ++x) {
      zpk::Vec v(dim(), 0);
      for (std::uint64_t a = 0; a < m; ++a)
        for (std::size_t j = 0; j < d; ++j) {
          long long e = (a == x) + (s[j] == x) - (mul[a * m + s[j]] == x);
          v[u(a, j)] = ring.reduce(e);
        }
      out.push_back(std::move(v));
    }
    return out;
  }

  std::vector<zpk::Vec> bocksteins() const {
    std::vector<zpk::Vec> out;
    const Subgroup whole = Subgroup::whole(g);
    std::vector<Exponents> elts(m);
    for (std::uint64_t i = 0; i < m; ++i) elts[i] = g.from_index(i);
    for (const auto& chi : h1_all(whole)) {
      const auto vals = character_on(whole, character_residues(chi, ring), elts, ring);
      zpk::Vec v(dim(), 0);
      for (std::uint64_t a = 0; a < m; ++a)
        for (std::size_t j = 0; j < d; ++j) {
          const std::uint64_t sum = std::uint64_t{vals[a]} + vals[s[j]] - vals[mul[a * m + s[j]]];
          v[u(a, j)] = static_cast<std::uint32_t>(sum / ring.q);
        }
      out.push_back(std::move(v));
    }
    return out;
  }
};

// Coboundaries and Bocksteins of a subgroup A, on |A|^2 coordinates ordered by
// the given element list.
zpk::Howell restriction_target(const Subgroup& a, const std::vector<Exponents>& elts,
                               const std::vector<std::uint32_t>& amul, const zpk::Ring& ring) {
  const std::size_t k = elts.size();
  std::vector<zpk::Vec> rows;
  for (std::size_t x = 1; x < k; ++x) {
    zpk::Vec v(k * k, 0);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        v[i * k + j] = ring.reduce(static_cast<long long>(i == x) + (j == x) - (amul[i * k + j] == x));
    rows.push_back(std::move(v));
  }
  for (const auto& chi : h1_all(a)) {
    const auto vals = character_on(a, character_residues(chi, ring), elts, ring);
    zpk::Vec v(k * k, 0);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        v[i * k + j] = static_cast<std::uint32_t>((std::uint64_t{vals[i]} + vals[j] - vals[amul[i * k + j]]) / ring.q);
    rows.push_back(std::move(v));
  }
  return zpk::Howell(ring, k * k, std::move(rows));
}

struct H2Work {
  CocycleSpace space;
  std::vector<zpk::Vec> z;
  std::vector<zpk::Vec> s;  // B^2 + Bocksteins
  std::vector<std::uint64_t> invariants;
  Enumeration en;
  std::vector<std::vector<std::uint32_t>> gen_tables;

  H2Work(const PcPresentation& g, const zpk::Ring& ring)
      : space(g, ring), z(space.cocycles()), s(collect(space)),
        invariants(zpk::quotient_invariants(ring, space.dim(), z, s)),
        en(ring, space.dim(), z, s, invariants_product(invariants) + 1) {
    if (en.size() != invariants_product(invariants)) throw GuardFailure("H^2: enumeration disagrees with invariants");
    for (const auto& gz : en.gens) gen_tables.push_back(space.table(gz));
  }

  static std::vector<zpk::Vec> collect(const CocycleSpace& sp) {
    auto out = sp.coboundaries();
    auto b = sp.bocksteins();
    out.insert(out.end(), b.begin(), b.end());
    return out;
  }

  std::vector<std::uint32_t> table_of(std::size_t e) const {
    const auto& ring = space.ring;
    std::vector<std::uint32_t> f(space.m * space.m, 0);
    for (std::size_t j = 0; j < en.gens.size(); ++j) {
      const std::uint64_t c = en.coeffs[e][j];
      if (!c) continue;
      for (std::size_t i = 0; i < f.size(); ++i) f[i] = static_cast<std::uint32_t>((f[i] + c * gen_tables[j][i]) % ring.q);
    }
    return f;
  }
};

std::uint64_t resolve_cap(unsigned p, std::uint64_t cap) { return cap ? cap : default_oracle_cap(p); }

}  // namespace

// ---------------------------------------------------------------- QZValue

QZValue::QZValue(unsigned p, std::uint64_t a, unsigned e) : p_(p), a_(a), e_(e) {
  a_ %= ipow(p_, e_);
  normalize();
}

QZValue QZValue::from_fraction(unsigned p, long long a, std::uint64_t m) {
  const unsigned e = log_p(m, p);
  if (ipow(p, e) != m) throw std::invalid_argument("QZValue: denominator is not a power of p");
  const long long mm = static_cast<long long>(m);
  return QZValue(p, static_cast<std::uint64_t>(((a % mm) + mm) % mm), e);
}

void QZValue::normalize() {
  if (a_ == 0) {
    e_ = 0;
    return;
  }
  while (e_ > 0 && a_ % p_ == 0) {
    a_ /= p_;
    --e_;
  }
}

std::uint64_t QZValue::scaled(unsigned e) const {
  if (e < e_) throw std::invalid_argument("QZValue: exponent too small");
  return a_ * ipow(p_, e - e_);
}

QZValue operator+(const QZValue& x, const QZValue& y) {
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  if (x.p_ != y.p_) throw std::invalid_argument("QZValue: mixed primes");
  const unsigned e = std::max(x.e_, y.e_);
  return QZValue(x.p_, (x.scaled(e) + y.scaled(e)) % ipow(x.p_, e), e);
}

QZValue operator-(const QZValue& x) {
  if (x.is_zero()) return x;
  return QZValue(x.p_, ipow(x.p_, x.e_) - x.a_, x.e_);
}

QZValue operator*(long long c, const QZValue& x) {
  if (x.is_zero()) return x;
  const long long m = static_cast<long long>(ipow(x.p_, x.e_));
  const long long r = ((c % m) + m) % m;
  return QZValue(x.p_, static_cast<std::uint64_t>((static_cast<unsigned __int128>(r) * x.a_) % m), x.e_);
}

std::string QZValue::to_string() const {
  if (a_ == 0) return "0";
  return std::to_string(a_) + "/" + std::to_string(ipow(p_, e_));
}

// ---------------------------------------------------------------- characters

QZValue Character::operator()(const Exponents& x) const {
  const auto d = domain.decompose(x);
  QZValue s;
  for (std::size_t i = 0; i < d.size(); ++i) s = s + static_cast<long long>(d[i]) * values[i];
  return s;
}

bool Character::is_zero() const {
  return std::all_of(values.begin(), values.end(), [](const QZValue& v) { return v.is_zero(); });
}

Character act(const PcPresentation& g, const Exponents& elt, const Character& chi) {
  Character out{chi.domain, {}};
  for (const auto& s : chi.domain.generators()) out.values.push_back(chi(g.conjugate(s, elt)));
  return out;
}

Character character_from_vector(const Subgroup& n, const zpk::Ring& ring, const zpk::Vec& v) {
  Character chi{n, {}};
  for (auto x : v) chi.values.push_back(QZValue(ring.p, x % ring.q, ring.k));
  return chi;
}

namespace {

std::vector<Character> character_kernel(const Subgroup& n, const std::vector<zpk::Vec>& extra_rows) {
  const auto& g = n.parent();
  const unsigned p = g.prime();
  const auto& s = n.generators();
  const std::size_t k = s.size();
  if (k == 0) return {};
  const zpk::Ring ring = zpk::Ring::for_modulus(p, n.order());
  zpk::KernelBuilder kb(ring, k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto d = n.decompose(g.power(s[i], p));
    zpk::Vec row(k, 0);
    for (std::size_t t = 0; t < k; ++t) row[t] = ring.reduce(-static_cast<long long>(d[t]));
    row[i] = ring.add(row[i], p % ring.q);
    kb.add_row(row);
    for (std::size_t j = i + 1; j < k; ++j) {
      const auto c = n.decompose(g.commutator(s[j], s[i]));
      zpk::Vec r2(k, 0);
      for (std::size_t t = 0; t < k; ++t) r2[t] = c[t] % ring.q;
      kb.add_row(r2);
    }
  }
  for (const auto& r : extra_rows) kb.add_row(r);
  std::vector<Character> out;
  for (const auto& v : kb.generators()) {
    auto chi = character_from_vector(n, ring, v);
    if (!chi.is_zero()) out.push_back(std::move(chi));
  }
  return out;
}

}  // namespace

std::vector<Character> h1_all(const Subgroup& n) { return character_kernel(n, {}); }

std::vector<Character> h1_invariants(const Subgroup& n, const PcPresentation& g) {
  if (&n.parent() != &g) throw std::invalid_argument("h1_invariants: N is not a subgroup of G");
  if (!n.is_normal()) throw std::invalid_argument("h1_invariants: N is not normal");
  const auto& s = n.generators();
  const std::size_t k = s.size();
  if (k == 0) return {};
  const zpk::Ring ring = zpk::Ring::for_modulus(g.prime(), n.order());
  std::vector<zpk::Vec> rows;
  for (unsigned gi = 0; gi < g.size(); ++gi) {
    const auto x = g.generator(gi);
    for (std::size_t r = 0; r < k; ++r) {
      const auto d = n.decompose(g.conjugate(s[r], x));
      zpk::Vec row(k, 0);
      for (std::size_t i = 0; i < k; ++i) row[i] = d[i] % ring.q;
      row[r] = ring.sub(row[r], 1);
      rows.push_back(std::move(row));
    }
  }
  return character_kernel(n, rows);
}

std::uint64_t character_span_order(const std::vector<Character>& chars) {
  if (chars.empty()) return 1;
  const unsigned p = chars[0].domain.parent().prime();
  unsigned e = 0;
  for (const auto& c : chars)
    for (const auto& v : c.values) e = std::max(e, v.exponent());
  if (e == 0) return 1;
  const zpk::Ring ring(p, e);
  std::vector<zpk::Vec> rows;
  for (const auto& c : chars) rows.push_back(character_residues(c, ring));
  return ipow(p, zpk::Howell(ring, rows[0].size(), rows).log_order());
}

// ---------------------------------------------------------------- H^2

std::uint64_t default_oracle_cap(unsigned p) {
  if (p == 3) return 81;
  if (p == 5) return 125;
  return std::uint64_t{p} * p;
}

std::uint64_t H2Structure::order() const { return invariants_product(invariants); }

bool is_2cocycle(const PcPresentation& g, std::uint64_t n, const std::vector<std::uint32_t>& f) {
  const std::uint64_t m = g.order();
  if (f.size() != m * m) return false;
  const auto mul = multiplication_table(g);
  for (std::uint64_t a = 0; a < m; ++a)
    for (std::uint64_t b = 0; b < m; ++b) {
      const auto ab = mul[a * m + b];
      for (std::uint64_t c = 0; c < m; ++c) {
        const auto bc = mul[b * m + c];
        if ((std::uint64_t{f[a * m + b]} + f[ab * m + c]) % n != (std::uint64_t{f[a * m + bc]} + f[b * m + c]) % n)
          return false;
      }
    }
  return true;
}

H2Structure h2_qz(const PcGroup& g, std::uint64_t size_cap) {
  H2Structure out;
  out.group = g;
  const std::uint64_t m = g->order();
  const std::uint64_t cap = resolve_cap(g->prime(), size_cap);
  if (m > cap)
    throw CapExceeded("oracle: |G| = " + std::to_string(m) + " exceeds the size cap " + std::to_string(cap));
  out.modulus = m;
  if (m == 1) return out;
  const zpk::Ring ring = zpk::Ring::for_modulus(g->prime(), m);
  H2Work w(*g, ring);
  out.invariants = w.invariants;
  std::vector<std::size_t> all(w.en.size());
  std::iota(all.begin(), all.end(), 0);
  auto basis = w.en.basis(all);
  std::sort(basis.begin(), basis.end(), [](const auto& x, const auto& y) { return x.second < y.second; });
  for (const auto& [e, o] : basis) {
    out.classes.push_back(w.table_of(e));
    out.class_orders.push_back(o);
  }
  if (out.class_orders != out.invariants) throw GuardFailure("H^2: basis orders disagree with invariants");
  return out;
}

B0Report b0_oracle(const PcGroup& g, std::uint64_t size_cap, PairMode mode) {
  const auto t0 = std::chrono::steady_clock::now();
  B0Report r;
  r.name = g->name();
  r.p = g->prime();
  r.n = g->size();
  r.method = Method::oracle;
  const std::uint64_t m = g->order();
  const std::uint64_t cap = resolve_cap(g->prime(), size_cap);
  if (m > cap)
    throw CapExceeded("oracle: |G| = " + std::to_string(m) + " exceeds the size cap " + std::to_string(cap));
  if (m == 1) return r;
  const zpk::Ring ring = zpk::Ring::for_modulus(g->prime(), m);
  H2Work w(*g, ring);
  r.multiplier_invariants = w.invariants;
  r.multiplier_order = invariants_product(w.invariants);

  // Restriction to a cyclic subgroup is always zero, so only noncyclic A matter.
  std::vector<char> alive(w.en.size(), 1);
  std::size_t checked = 0;
  for (const auto& a : enumerate_bicyclic_subgroups(*g, mode)) {
    const auto elts = a.elements();
    const std::size_t k = elts.size();
    std::uint64_t exponent = 1;
    for (const auto& x : elts) exponent = std::max(exponent, g->order_of(x));
    if (exponent == k) continue;
    ++checked;
    std::vector<std::uint32_t> gi(k);
    std::vector<long long> local(m, -1);
    for (std::size_t i = 0; i < k; ++i) {
      gi[i] = static_cast<std::uint32_t>(g->index_of(elts[i]));
      local[gi[i]] = static_cast<long long>(i);
    }
    std::vector<std::uint32_t> amul(k * k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) amul[i * k + j] = static_cast<std::uint32_t>(local[w.space.mul[gi[i] * m + gi[j]]]);
    const auto target = restriction_target(a, elts, amul, ring);
    std::vector<zpk::Vec> restricted;
    for (const auto& t : w.gen_tables) {
      zpk::Vec v(k * k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) v[i * k + j] = t[gi[i] * m + gi[j]];
      restricted.push_back(std::move(v));
    }
    for (std::size_t e = 1; e < w.en.size(); ++e) {
      if (!alive[e]) continue;
      zpk::Vec v(k * k, 0);
      for (std::size_t j = 0; j < restricted.size(); ++j) ring.axpy(v, w.en.coeffs[e][j], restricted[j]);
      if (!target.contains(v)) alive[e] = 0;
    }
  }
  std::vector<std::size_t> members;
  for (std::size_t e = 0; e < w.en.size(); ++e)
    if (alive[e]) members.push_back(e);
  // The survivors form a subgroup; read its invariants off element orders.
  std::vector<std::uint64_t> omega(ring.k + 1, 0);
  for (auto e : members) {
    const unsigned t = log_p(w.en.order(e), ring.p);
    for (unsigned i = t; i <= ring.k; ++i) ++omega[i];
  }
  r.invariants = invariants_from_omega(omega, ring.p);
  if (invariants_product(r.invariants) != members.size()) throw GuardFailure("B0 oracle: survivors are not a subgroup");
  r.m0_order = r.multiplier_order / members.size();
  std::ostringstream cert;
  cert << "H^2 over Z/" << m << " on " << w.space.dim() << " cocycle coordinates; |H^2| = " << r.multiplier_order
       << "; noncyclic bicyclic subgroups " << checked << " (" << (mode == PairMode::full ? "full" : "bicyclic") << ")";
  r.certificates.push_back(cert.str());
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

// ---------------------------------------------------------------- transgression

std::string TransgressionCertificate::to_string() const {
  std::ostringstream os;
  os << "|H^1(N)^G| = " << h1_fixed << ", |im res| = " << res_image << ", |im tr| = " << tr_image
     << ", |H^2(G/N)| = " << h2_quotient << " (" << h2_method << "), |coker tr| = " << cokernel();
  return os.str();
}

TransgressionCertificate transgression_cokernel(const PcGroup& g, const Subgroup& n, std::uint64_t size_cap) {
  TransgressionCertificate c;
  c.h1_fixed = character_span_order(h1_invariants(n, *g));
  std::vector<Character> restricted;
  const Subgroup whole = Subgroup::whole(*g);
  for (const auto& chi : h1_all(whole)) {
    Character r{n, {}};
    for (const auto& s : n.generators()) r.values.push_back(chi(s));
    restricted.push_back(std::move(r));
  }
  c.res_image = character_span_order(restricted);
  if (c.h1_fixed % c.res_image) throw GuardFailure("transgression: restriction image larger than H^1(N)^G");
  c.tr_image = c.h1_fixed / c.res_image;
  if (n.order() == g->order()) {
    c.h2_quotient = 1;
    c.h2_method = "trivial";
  } else {
    const auto q = quotient(g, n);
    const std::uint64_t cap = resolve_cap(g->prime(), size_cap);
    if (q.group->order() <= cap) {
      c.h2_quotient = h2_qz(q.group, cap).order();
      c.h2_method = "oracle";
    } else {
      c.h2_quotient = invariants_product(schur_multiplier(q.group));
      c.h2_method = "tensor";
    }
  }
  if (c.h2_quotient % c.tr_image) throw GuardFailure("transgression: image larger than H^2(G/N)");
  return c;
}

CriterionResult lemma21_check(const PcGroup& g, const Subgroup& n, PairMode mode, std::uint64_t size_cap) {
  CriterionResult res;
  if (!n.is_normal()) throw std::invalid_argument("lemma21_check: N is not normal");
  const auto cert = transgression_cokernel(g, n, size_cap);
  res.transcript.push_back("transgression: " + cert.to_string());
  if (cert.cokernel() == 1) {
    res.transcript.push_back("tr is surjective");
    return res;
  }
  const auto q = quotient(g, n);
  const PcPresentation& qg = *q.group;
  const std::uint64_t mq = qg.order();
  std::vector<std::uint32_t> qidx(g->order());
  for (std::uint64_t i = 0; i < g->order(); ++i)
    qidx[i] = static_cast<std::uint32_t>(qg.index_of(q.projection.apply(g->from_index(i))));
  // in_cyclic[a * mq + b]: a lies in <b>
  std::vector<char> in_cyclic(mq * mq, 0);
  for (std::uint64_t b = 0; b < mq; ++b) {
    const auto eb = qg.from_index(b);
    Exponents x = qg.identity();
    do {
      in_cyclic[qg.index_of(x) * mq + b] = 1;
      x = qg.multiply(x, eb);
    } while (!qg.is_identity(x));
  }
  bool ok = true;
  std::uint64_t pairs = 0;
  std::string failure;
  for_each_commuting_pair(*g, mode, [&](const Exponents& x, const Exponents& y) {
    if (!ok) return;
    ++pairs;
    const auto a = qidx[g->index_of(x)];
    const auto b = qidx[g->index_of(y)];
    if (!in_cyclic[a * mq + b] && !in_cyclic[b * mq + a]) {
      ok = false;
      failure = "<" + format_element(*g, x) + ", " + format_element(*g, y) + "> has noncyclic image in G/N";
    }
  });
  if (!ok) {
    res.transcript.push_back(failure);
    return res;
  }
  res.transcript.push_back("AN/N cyclic for every bicyclic A (" + std::to_string(pairs) + " commuting pairs, " +
                           (mode == PairMode::full ? "full" : "bicyclic") + ")");
  res.holds = true;
  return res;
}

CriterionResult lemma22_check(const PcGroup& g, std::vector<Exponents> f, PairMode mode) {
  const unsigned p = g->prime();
  if (p < 3) throw std::invalid_argument("lemma22_check: requires p >= 3");
  if (f.empty()) {
    if (g->size() != 5) throw std::invalid_argument("lemma22_check: group must have order p^5");
    for (unsigned i = 0; i < 5; ++i) f.push_back(g->generator(i));
  }
  if (f.size() != 5) throw std::invalid_argument("lemma22_check: expected five generators");
  if (g->size() != 5) throw std::invalid_argument("lemma22_check: group must have order p^5");
  CriterionResult res;
  auto fail = [&](const std::string& why) {
    res.transcript.push_back("fails: " + why);
    return res;
  };
  const PcPresentation& G = *g;
  if (subgroup_closure(G, f).order() != G.order()) return fail("f1..f5 do not generate G");
  const auto& f1 = f[0];
  const auto& f2 = f[1];
  const auto& f3 = f[2];
  const auto& f4 = f[3];
  const auto& f5 = f[4];
  if (!G.is_identity(G.power(f4, p)) || !G.is_identity(G.power(f5, p))) return fail("(i) f4^p = f5^p = 1");
  for (unsigned i = 0; i < G.size(); ++i)
    if (!G.is_identity(G.commutator(f5, G.generator(i)))) return fail("(i) f5 central");
  res.transcript.push_back("(i) holds");
  const auto one = G.identity();
  const std::vector<std::tuple<const Exponents*, const Exponents*, Exponents, std::string>> comms = {
      {&f2, &f1, f3, "[f2,f1] = f3"}, {&f3, &f1, f4, "[f3,f1] = f4"}, {&f4, &f1, f5, "[f4,f1] = f5"},
      {&f3, &f2, f5, "[f3,f2] = f5"}, {&f4, &f2, one, "[f4,f2] = 1"}, {&f4, &f3, one, "[f4,f3] = 1"}};
  for (const auto& [a, b, want, label] : comms)
    if (G.commutator(*a, *b) != want) return fail("(ii) " + label);
  res.transcript.push_back("(ii) holds");
  const Subgroup n = subgroup_closure(G, {f4, f5});
  if (n.order() != std::uint64_t{p} * p || !n.is_abelian()) return fail("(iii) <f4,f5> is C_p x C_p");
  if (!n.is_normal()) return fail("(iii) <f4,f5> normal");
  const auto q = quotient(g, n);
  const PcPresentation& Q = *q.group;
  if (Q.order() != std::uint64_t{p} * p * p) return fail("(iii) |G/N| = p^3");
  if (group_exponent(Q) != p) return fail("(iii) G/N has exponent p");
  if (Subgroup::whole(Q).is_abelian()) return fail("(iii) G/N nonabelian");
  res.transcript.push_back("(iii) holds");
  auto inner = lemma21_check(g, n, mode);
  res.transcript.insert(res.transcript.end(), inner.transcript.begin(), inner.transcript.end());
  res.holds = inner.holds;
  return res;
}

// ---------------------------------------------------------------- cyclic H^1

zpk::Vec CyclicModule::apply(const zpk::Vec& x) const {
  zpk::Vec y(rank, 0);
  for (std::size_t r = 0; r < rank; ++r) {
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < rank; ++i) s = (s + std::uint64_t{action[r][i]} * x[i]) % ring.q;
    y[r] = static_cast<std::uint32_t>(s);
  }
  return y;
}

std::vector<zpk::Vec> beta_cocycle(const CyclicModule& m, const zpk::Vec& x) {
  std::vector<zpk::Vec> beta(m.n, zpk::Vec(m.rank, 0));
  zpk::Vec power = x;  // sigma^(i-1) x
  for (unsigned i = 1; i < m.n; ++i) {
    beta[i] = beta[i - 1];
    m.ring.axpy(beta[i], 1, power);
    power = m.apply(power);
  }
  return beta;
}

CyclicH1 cyclic_h1(const CyclicModule& m) {
  const auto& ring = m.ring;
  for (const auto& g : m.gens) {
    zpk::Vec x = g;
    for (unsigned t = 0; t < m.n; ++t) x = m.apply(x);
    if (x != g) throw std::invalid_argument("cyclic_h1: action does not have order dividing n");
  }
  CyclicH1 out;
  std::vector<zpk::Vec> norms;
  std::vector<zpk::Vec> image;
  for (const auto& g : m.gens) {
    zpk::Vec sum(m.rank, 0);
    zpk::Vec x = g;
    for (unsigned t = 0; t < m.n; ++t) {
      ring.axpy(sum, 1, x);
      x = m.apply(x);
    }
    norms.push_back(std::move(sum));
    zpk::Vec d = m.apply(g);
    ring.axpy(d, ring.q - 1, g);
    image.push_back(std::move(d));
  }
  std::vector<zpk::Vec> ker;
  if (!m.gens.empty()) {
    zpk::KernelBuilder kb(ring, m.gens.size());
    for (std::size_t r = 0; r < m.rank; ++r) {
      zpk::Vec row(m.gens.size());
      for (std::size_t j = 0; j < m.gens.size(); ++j) row[j] = norms[j][r];
      kb.add_row(row);
    }
    for (const auto& c : kb.generators()) {
      zpk::Vec v(m.rank, 0);
      for (std::size_t j = 0; j < c.size(); ++j) ring.axpy(v, c[j], m.gens[j]);
      if (!ring.is_zero(v)) ker.push_back(std::move(v));
    }
  }
  out.invariants = zpk::quotient_invariants(ring, m.rank, ker, image);
  Enumeration en(ring, m.rank, ker, image, invariants_product(out.invariants) + 1);
  if (en.size() != invariants_product(out.invariants)) throw GuardFailure("cyclic_h1: enumeration mismatch");
  out.reps = en.gens;
  out.elements = en.reps;
  for (const auto& x : out.reps) out.cocycles.push_back(beta_cocycle(m, x));
  return out;
}

CyclicModule character_module(const PcPresentation& g, const Subgroup& n, const Exponents& u, unsigned order) {
  CyclicModule m;
  m.ring = zpk::Ring::for_modulus(g.prime(), n.order());
  const auto& s = n.generators();
  m.rank = s.size();
  m.n = order;
  for (const auto& chi : h1_all(n)) m.gens.push_back(character_residues(chi, m.ring));
  m.action.assign(m.rank, std::vector<std::uint32_t>(m.rank, 0));
  for (std::size_t r = 0; r < m.rank; ++r) {
    const auto d = n.decompose(g.conjugate(s[r], u));
    for (std::size_t i = 0; i < m.rank; ++i) m.action[r][i] = d[i] % m.ring.q;
  }
  return m;
}

// ---------------------------------------------------------------- 3-cocycles

Cocycle3 cup_fundamental(const std::vector<QZValue>& beta) {
  const std::size_t p = beta.size();
  Cocycle3 c(p, std::vector<std::vector<QZValue>>(p, std::vector<QZValue>(p)));
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j)
      if (i + j > p - 1)
        for (std::size_t l = 0; l < p; ++l) c[i][j][l] = beta[l];
  return c;
}

bool is_3cocycle(const Cocycle3& c) {
  const std::size_t p = c.size();
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t b = 0; b < p; ++b)
      for (std::size_t x = 0; x < p; ++x)
        for (std::size_t y = 0; y < p; ++y) {
          const QZValue v = c[b][x][y] - c[(a + b) % p][x][y] + c[a][(b + x) % p][y] - c[a][b][(x + y) % p] + c[a][b][x];
          if (!v.is_zero()) return false;
        }
  return true;
}

Exponents section_cocycle(const PcPresentation& g, const Exponents& u, unsigned i, unsigned j) {
  const unsigned p = g.prime();
  return g.multiply(g.multiply(g.power(u, i), g.power(u, j)), g.power(u, -static_cast<long long>((i + j) % p)));
}

Cocycle3 lambda_map(const PcPresentation& g, const Subgroup& n, const CyclicCocycle& gamma) {
  const unsigned p = g.prime();
  if (g.order() != n.order() * p) throw std::invalid_argument("lambda_map: G/N must have order p");
  if (n.contains(gamma.u)) throw std::invalid_argument("lambda_map: u lies in N");
  if (gamma.values.size() != p) throw std::invalid_argument("lambda_map: gamma needs p values");
  Cocycle3 c(p, std::vector<std::vector<QZValue>>(p, std::vector<QZValue>(p)));
  for (unsigned i = 0; i < p; ++i)
    for (unsigned j = 0; j < p; ++j) {
      const auto eps = section_cocycle(g, gamma.u, i, j);
      if (!n.contains(eps)) throw GuardFailure("lambda_map: section cocycle outside N");
      const auto uk = g.power(gamma.u, (i + j) % p);
      const auto x = g.conjugate(eps, uk);  // u^-k eps u^k
      for (unsigned l = 0; l < p; ++l) c[i][j][l] = gamma.values[l](x);
    }
  return c;
}

CriterionResult thm56_certificate(const PcGroup& g, const Subgroup& n, std::optional<Exponents> u) {
  const unsigned p = g->prime();
  const PcPresentation& G = *g;
  if (!n.is_normal()) throw std::invalid_argument("thm56_certificate: N is not normal");
  if (G.order() != n.order() * p) throw std::invalid_argument("thm56_certificate: G/N must have order p");
  if (n.order() > ipow(p, 4)) throw std::invalid_argument("thm56_certificate: |N| > p^4, B0(N) = 0 not known");
  CriterionResult res;
  res.transcript.push_back("|N| = " + std::to_string(n.order()) + " <= p^4, so B0(N) = 0");
  const auto q = quotient(g, n);
  const auto h2q = h2_qz(q.group, std::max<std::uint64_t>(p, default_oracle_cap(p)));
  if (h2q.order() != 1) throw std::invalid_argument("thm56_certificate: H^2(G/N) != 0");
  res.transcript.push_back("H^2(G/N) = 0");
  if (!u) {
    for (unsigned i = 0; i < G.size() && !u; ++i)
      if (!n.contains(G.generator(i))) u = G.generator(i);
  }
  if (n.contains(*u)) throw std::invalid_argument("thm56_certificate: u lies in N");
  const auto module = character_module(G, n, *u, p);
  const auto h1 = cyclic_h1(module);
  res.transcript.push_back("H^1(G/N, H^1(N)) = " + format_invariants(h1.invariants));
  if (h1.invariants.empty()) {
    res.transcript.push_back("lambda is injective on the zero group");
    res.holds = true;
    return res;
  }
  for (std::size_t e = 1; e < h1.elements.size(); ++e) {
    CyclicCocycle gamma{*u, {}};
    for (const auto& v : beta_cocycle(module, h1.elements[e]))
      gamma.values.push_back(character_from_vector(n, module.ring, v));
    const auto c = lambda_map(G, n, gamma);
    std::vector<QZValue> beta(p);
    for (unsigned i = 0; i < p; ++i) beta[i] = c[1][p - 1][i];
    bool hom = true;
    for (unsigned i = 0; i < p; ++i) hom = hom && beta[i] == static_cast<long long>(i) * beta[1];
    if (!hom || beta[1].is_zero() || cup_fundamental(beta) != c) {
      res.transcript.push_back("class " + std::to_string(e) + ": lambda value not recognized as a nonzero cup product");
      return res;
    }
  }
  res.transcript.push_back("lambda(gamma) = alpha cup beta~ with beta~ != 0 for all " +
                           std::to_string(h1.elements.size() - 1) + " nonzero classes");
  res.holds = true;
  return res;
}

std::vector<Subgroup> maximal_subgroups(const PcPresentation& g) {
  const unsigned p = g.prime();
  std::vector<Exponents> phi_gens = derived_subgroup(g).generators();
  for (unsigned i = 0; i < g.size(); ++i) phi_gens.push_back(g.power(g.generator(i), p));
  Subgroup span = subgroup_closure(g, phi_gens);
  const Subgroup phi = span;
  std::vector<Exponents> x;
  for (unsigned i = 0; i < g.size(); ++i)
    if (!span.contains(g.generator(i))) {
      x.push_back(g.generator(i));
      span.add(g.generator(i));
    }
  const unsigned d = static_cast<unsigned>(x.size());
  std::vector<Subgroup> out;
  std::vector<unsigned> c(d, 0);
  // functionals with leading coefficient 1, one per hyperplane
  for (unsigned lead = 0; lead < d; ++lead) {
    const std::uint64_t tails = ipow(p, d - lead - 1);
    for (std::uint64_t t = 0; t < tails; ++t) {
      std::fill(c.begin(), c.end(), 0);
      c[lead] = 1;
      for (unsigned j = lead + 1, r = static_cast<unsigned>(t); j < d; ++j, r /= p) c[j] = r % p;
      std::vector<Exponents> gens = phi.generators();
      for (unsigned j = 0; j < d; ++j)
        if (j != lead) gens.push_back(g.multiply(x[j], g.power(x[lead], -static_cast<long long>(c[j]))));
      out.push_back(subgroup_closure(g, gens));
    }
  }
  return out;
}

B0Report b0_criteria(const PcGroup& g, PairMode mode) {
  const auto start = std::chrono::steady_clock::now();
  B0Report r;
  r.name = g->name();
  r.p = g->prime();
  r.n = g->size();
  r.method = Method::criterion;
  r.status = "inconclusive";
  auto finish = [&] {
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
  };
  if (r.p < 3 || r.n != 5) {
    r.certificates.push_back("criteria cover groups of order p^5 with p odd");
    return finish();
  }
  if (Subgroup::whole(*g).is_abelian()) {
    r.status = "zero";
    r.certificates.push_back("abelian: every wedge is a commuting wedge");
    return finish();
  }
  const auto l22 = lemma22_check(g, {}, mode);
  if (l22.holds) {
    r.status = "nonzero";
    r.certificates = l22.transcript;
    return finish();
  }
  r.certificates.push_back("nonvanishing criterion fails on the pc generators: " +
                           (l22.transcript.empty() ? std::string("no transcript") : l22.transcript.back()));
  const auto maximal = maximal_subgroups(*g);
  for (std::size_t i = 0; i < maximal.size(); ++i) {
    try {
      const auto c = thm56_certificate(g, maximal[i]);
      if (!c.holds) continue;
      r.status = "zero";
      r.certificates.push_back("maximal subgroup " + std::to_string(i + 1) + " of " + std::to_string(maximal.size()));
      r.certificates.insert(r.certificates.end(), c.transcript.begin(), c.transcript.end());
      return finish();
    } catch (const std::invalid_argument&) {
    }
  }
  r.certificates.push_back("no injectivity certificate among " + std::to_string(maximal.size()) + " maximal subgroups");
  return finish();
}

}  // namespace b0lab
