#include "b0lab/subgroup.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_map>

namespace b0lab {

namespace {

unsigned leading_depth(const Exponents& x) {
  for (unsigned i = 0; i < x.size(); ++i)
    if (x[i]) return i;
  return static_cast<unsigned>(x.size());
}

unsigned inverse_mod(unsigned a, unsigned p) {
  for (unsigned b = 1; b < p; ++b)
    if (a * b % p == 1) return b;
  throw std::logic_error("no inverse mod p");
}

}  // namespace

Subgroup::Subgroup(const PcPresentation& parent) : parent_(&parent), slot_(parent.size(), -1) {}

Subgroup Subgroup::whole(const PcPresentation& parent) {
  Subgroup s(parent);
  for (unsigned i = 0; i < parent.size(); ++i) {
    s.gens_.push_back(parent.generator(i));
    s.slot_[i] = static_cast<int>(i);
  }
  s.inv_powers_.resize(parent.size());
  for (unsigned i = 0; i < parent.size(); ++i) s.refresh_powers(i);
  return s;
}

std::vector<unsigned> Subgroup::leading_depths() const {
  std::vector<unsigned> out;
  for (const auto& g : gens_) out.push_back(leading_depth(g));
  return out;
}

std::uint64_t Subgroup::order() const {
  std::uint64_t o = 1;
  for (std::size_t i = 0; i < gens_.size(); ++i) o *= parent_->prime();
  return o;
}

void Subgroup::refresh_powers(std::size_t r) {
  const unsigned p = parent_->prime();
  auto& v = inv_powers_[r];
  v.assign(p, parent_->identity());
  const Exponents inv = parent_->inverse(gens_[r]);
  for (unsigned e = 1; e < p; ++e) v[e] = parent_->multiply(v[e - 1], inv);
}

Exponents Subgroup::sift(Exponents x) const {
  const unsigned n = parent_->size();
  for (unsigned d = 0; d < n; ++d) {
    if (!x[d]) continue;
    const int s = slot_[d];
    if (s < 0) return x;
    x = parent_->multiply(inv_powers_[s][x[d]], x);
  }
  return x;
}

bool Subgroup::contains(const Exponents& x) const { return parent_->is_identity(sift(x)); }

Exponents Subgroup::coset_rep(Exponents x) const {
  const unsigned n = parent_->size();
  for (unsigned d = 0; d < n; ++d) {
    if (!x[d]) continue;
    const int s = slot_[d];
    if (s >= 0) x = parent_->multiply(x, inv_powers_[s][x[d]]);
  }
  return x;
}

std::vector<unsigned> Subgroup::decompose(Exponents x) const {
  std::vector<unsigned> a(gens_.size(), 0);
  const unsigned n = parent_->size();
  for (unsigned d = 0; d < n; ++d) {
    if (!x[d]) continue;
    const int s = slot_[d];
    if (s < 0) throw std::invalid_argument("decompose: element not in subgroup");
    a[s] = x[d];
    x = parent_->multiply(inv_powers_[s][x[d]], x);
  }
  return a;
}

bool Subgroup::insert_residue(Exponents r) {
  const unsigned d = leading_depth(r);
  if (d == r.size()) return false;
  const unsigned p = parent_->prime();
  if (r[d] != 1) r = parent_->power(r, inverse_mod(r[d], p));
  auto pos = std::lower_bound(gens_.begin(), gens_.end(), d,
                              [](const Exponents& g, unsigned depth) { return leading_depth(g) < depth; });
  const auto idx = static_cast<std::size_t>(pos - gens_.begin());
  gens_.insert(pos, std::move(r));
  inv_powers_.insert(inv_powers_.begin() + static_cast<std::ptrdiff_t>(idx), std::vector<Exponents>{});
  refresh_powers(idx);
  std::fill(slot_.begin(), slot_.end(), -1);
  for (std::size_t i = 0; i < gens_.size(); ++i) slot_[leading_depth(gens_[i])] = static_cast<int>(i);
  return true;
}

void Subgroup::reduce() {
  for (std::size_t r = 0; r < gens_.size(); ++r) {
    const unsigned lead = leading_depth(gens_[r]);
    for (std::size_t t = 0; t < r; ++t) {
      const unsigned e = gens_[t][lead];
      if (!e) continue;
      gens_[t] = parent_->multiply(gens_[t], inv_powers_[r][e]);
      refresh_powers(t);
    }
  }
}

bool Subgroup::add(const Exponents& x) {
  if (parent_->is_identity(x) || contains(x)) return false;
  std::deque<Exponents> queue{x};
  while (!queue.empty()) {
    Exponents y = std::move(queue.front());
    queue.pop_front();
    Exponents r = sift(std::move(y));
    if (parent_->is_identity(r)) continue;
    const unsigned d = leading_depth(r);
    insert_residue(std::move(r));
    const Exponents& s = gens_[slot_[d]];
    queue.push_back(parent_->power(s, parent_->prime()));
    for (const auto& t : gens_)
      if (&t != &s) queue.push_back(parent_->commutator(s, t));
  }
  reduce();
  return true;
}

std::vector<Exponents> Subgroup::elements() const {
  std::vector<Exponents> elems{parent_->identity()};
  const unsigned p = parent_->prime();
  for (std::size_t r = gens_.size(); r-- > 0;) {
    std::vector<Exponents> next;
    next.reserve(elems.size() * p);
    Exponents pw = parent_->identity();
    for (unsigned e = 0; e < p; ++e) {
      for (const auto& y : elems) next.push_back(parent_->multiply(pw, y));
      pw = parent_->multiply(pw, gens_[r]);
    }
    elems = std::move(next);
  }
  return elems;
}

PcGroup Subgroup::as_presentation(std::string name) const {
  const unsigned k = rank_of_sequence();
  PcRelations rel(parent_->prime(), k);
  rel.name = name.empty() ? parent_->name() + "-sub" : std::move(name);
  auto to_word = [&](const Exponents& x) {
    Word w;
    auto a = decompose(x);
    for (unsigned i = 0; i < k; ++i)
      if (a[i]) w.push_back({i, a[i]});
    return w;
  };
  for (unsigned r = 0; r < k; ++r) {
    rel.powers[r] = to_word(parent_->power(gens_[r], parent_->prime()));
    for (unsigned t = 0; t < r; ++t) {
      Word w = to_word(parent_->commutator(gens_[r], gens_[t]));
      if (!w.empty()) rel.comms[{r, t}] = std::move(w);
    }
  }
  return make_group(std::move(rel));
}

bool Subgroup::is_abelian() const {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (!parent_->is_identity(parent_->commutator(gens_[i], gens_[j]))) return false;
  return true;
}

bool Subgroup::is_normal() const {
  for (const auto& s : gens_)
    for (unsigned i = 0; i < parent_->size(); ++i)
      if (!contains(parent_->conjugate(s, parent_->generator(i)))) return false;
  return true;
}

Subgroup subgroup_closure(const PcPresentation& g, const std::vector<Exponents>& gens) {
  Subgroup s(g);
  for (const auto& x : gens) s.add(x);
  return s;
}

namespace {
// Closes s under conjugation by the given elements.
void close_under_conjugation(Subgroup& s, const std::vector<Exponents>& by) {
  const PcPresentation& g = s.parent();
  bool changed = true;
  while (changed) {
    changed = false;
    const auto gens = s.generators();
    for (const auto& x : gens)
      for (const auto& b : by)
        if (s.add(g.commutator(x, b))) changed = true;
  }
}

std::vector<Exponents> pc_generators(const PcPresentation& g) {
  std::vector<Exponents> v;
  for (unsigned i = 0; i < g.size(); ++i) v.push_back(g.generator(i));
  return v;
}
}  // namespace

Subgroup normal_closure(const PcPresentation& g, const std::vector<Exponents>& gens) {
  Subgroup s = subgroup_closure(g, gens);
  close_under_conjugation(s, pc_generators(g));
  return s;
}

Subgroup depth_subgroup(const PcPresentation& g, unsigned from) {
  std::vector<Exponents> gens;
  for (unsigned i = from; i < g.size(); ++i) gens.push_back(g.generator(i));
  return subgroup_closure(g, gens);
}

Subgroup center(const PcPresentation& g) {
  Subgroup z(g);
  const std::uint64_t total = g.order();
  const auto gens = pc_generators(g);
  for (std::uint64_t idx = 1; idx < total; ++idx) {
    Exponents x = g.from_index(idx);
    if (z.contains(x)) continue;
    bool central = std::all_of(gens.begin(), gens.end(),
                               [&](const Exponents& y) { return g.is_identity(g.commutator(x, y)); });
    if (central) z.add(x);
  }
  return z;
}

Subgroup derived_subgroup(const PcPresentation& g) {
  std::vector<Exponents> comms;
  for (unsigned j = 0; j < g.size(); ++j)
    for (unsigned i = 0; i < j; ++i)
      if (!g.comm_tail(j, i).empty()) comms.push_back(g.collect_word(g.comm_tail(j, i)));
  return normal_closure(g, comms);
}

Subgroup commutator_subgroup(const Subgroup& a, const Subgroup& b) {
  const PcPresentation& g = a.parent();
  if (&g != &b.parent()) throw std::invalid_argument("commutator_subgroup: different parents");
  Subgroup s(g);
  for (const auto& x : a.generators())
    for (const auto& y : b.generators()) s.add(g.commutator(x, y));
  std::vector<Exponents> by = a.generators();
  by.insert(by.end(), b.generators().begin(), b.generators().end());
  close_under_conjugation(s, by);
  return s;
}

Subgroup product(const Subgroup& a, const Subgroup& b) {
  Subgroup s = a;
  for (const auto& y : b.generators()) s.add(y);
  return s;
}

Subgroup intersection(const Subgroup& a, const Subgroup& b) {
  const Subgroup& small = a.order() <= b.order() ? a : b;
  const Subgroup& large = a.order() <= b.order() ? b : a;
  Subgroup s(a.parent());
  for (const auto& x : small.elements())
    if (!s.contains(x) && large.contains(x)) s.add(x);
  return s;
}

Subgroup power_subgroup(const Subgroup& s, unsigned i) {
  const PcPresentation& g = s.parent();
  long long q = 1;
  for (unsigned k = 0; k < i; ++k) q *= g.prime();
  Subgroup out(g);
  for (const auto& x : s.generators()) out.add(g.power(x, q));
  return out;
}

std::vector<Subgroup> lower_central_series(const PcPresentation& g) {
  std::vector<Subgroup> series{Subgroup::whole(g)};
  const Subgroup whole = Subgroup::whole(g);
  while (series.back().order() > 1) {
    Subgroup next = commutator_subgroup(series.back(), whole);
    if (next.order() == series.back().order())
      throw std::logic_error("lower central series does not terminate");
    series.push_back(std::move(next));
  }
  return series;
}

Homomorphism::Homomorphism(PcGroup source, PcGroup target, std::vector<Exponents> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (images_.size() != source_->size()) throw std::invalid_argument("homomorphism: wrong number of images");
  for (const auto& x : images_)
    if (x.size() != target_->size()) throw std::invalid_argument("homomorphism: image of wrong length");
}

Exponents Homomorphism::apply(const Exponents& x) const {
  Exponents r = target_->identity();
  for (unsigned i = 0; i < x.size(); ++i)
    if (x[i]) r = target_->multiply(r, target_->power(images_[i], x[i]));
  return r;
}

Exponents Homomorphism::apply_word(const Word& w) const {
  Exponents r = target_->identity();
  for (const Letter& l : w) r = target_->multiply(r, target_->power(images_[l.gen], l.exp));
  return r;
}

bool Homomorphism::validate() const {
  const PcPresentation& s = *source_;
  const PcPresentation& t = *target_;
  for (unsigned i = 0; i < s.size(); ++i) {
    if (t.power(images_[i], s.prime()) != apply_word(s.power_tail(i))) return false;
    for (unsigned k = 0; k < i; ++k)
      if (t.commutator(images_[i], images_[k]) != apply_word(s.comm_tail(i, k))) return false;
  }
  return true;
}

bool Homomorphism::is_surjective() const {
  return subgroup_closure(*target_, images_).order() == target_->order();
}

QuotientResult quotient(const PcGroup& gp, const Subgroup& n) {
  const PcPresentation& g = *gp;
  if (&n.parent() != &g) throw std::invalid_argument("quotient: subgroup of a different group");
  if (!n.is_normal()) throw std::invalid_argument("quotient: subgroup is not normal");
  std::vector<bool> lead(g.size(), false);
  for (unsigned d : n.leading_depths()) lead[d] = true;
  std::vector<unsigned> factor;
  std::vector<int> index(g.size(), -1);
  for (unsigned d = 0; d < g.size(); ++d)
    if (!lead[d]) {
      index[d] = static_cast<int>(factor.size());
      factor.push_back(d);
    }
  const unsigned m = static_cast<unsigned>(factor.size());
  auto reduce_word = [&](const Exponents& x) {
    Exponents r = n.coset_rep(x);
    Word w;
    for (unsigned d = 0; d < g.size(); ++d)
      if (r[d]) w.push_back({static_cast<std::uint32_t>(index[d]), r[d]});
    return w;
  };
  PcRelations rel(g.prime(), m);
  rel.name = g.name() + "/N";
  const auto& src = g.relations();
  for (unsigned a = 0; a < m; ++a) {
    rel.gen_names.push_back(g.gen_name(factor[a]));
    if (!src.weights.empty()) rel.weights.push_back(src.weights[factor[a]]);
    rel.powers[a] = reduce_word(g.power(g.generator(factor[a]), g.prime()));
    for (unsigned b = 0; b < a; ++b) {
      Word w = reduce_word(g.commutator(g.generator(factor[a]), g.generator(factor[b])));
      if (!w.empty()) rel.comms[{a, b}] = std::move(w);
    }
  }
  PcGroup q = make_group(std::move(rel));
  std::vector<Exponents> images;
  for (unsigned d = 0; d < g.size(); ++d) images.push_back(q->collect_word(reduce_word(g.generator(d))));
  return {q, Homomorphism(gp, q, std::move(images)), std::move(factor)};
}

PcGroup direct_product(const PcPresentation& g, const PcPresentation& h) {
  if (g.prime() != h.prime()) throw std::invalid_argument("direct_product: different primes");
  const unsigned ng = g.size(), nh = h.size();
  PcRelations rel(g.prime(), ng + nh);
  rel.name = g.name() + "x" + h.name();
  auto shift = [](Word w, unsigned by) {
    for (auto& l : w) l.gen += by;
    return w;
  };
  for (unsigned i = 0; i < ng; ++i) {
    rel.gen_names.push_back(g.gen_name(i));
    rel.powers[i] = g.power_tail(i);
    for (unsigned k = 0; k < i; ++k)
      if (!g.comm_tail(i, k).empty()) rel.comms[{i, k}] = g.comm_tail(i, k);
  }
  for (unsigned i = 0; i < nh; ++i) {
    rel.gen_names.push_back(h.gen_name(i) + "'");
    rel.powers[ng + i] = shift(h.power_tail(i), ng);
    for (unsigned k = 0; k < i; ++k)
      if (!h.comm_tail(i, k).empty()) rel.comms[{ng + i, ng + k}] = shift(h.comm_tail(i, k), ng);
  }
  if (!g.relations().weights.empty() && !h.relations().weights.empty()) {
    rel.weights = g.relations().weights;
    rel.weights.insert(rel.weights.end(), h.relations().weights.begin(), h.relations().weights.end());
  }
  return make_group(std::move(rel));
}

Subgroup kernel(const Homomorphism& f) {
  const PcPresentation& s = *f.source();
  const PcPresentation& t = *f.target();
  PcGroup prod = direct_product(t, s);
  const unsigned nt = t.size();
  std::vector<Exponents> graph;
  for (unsigned i = 0; i < s.size(); ++i) {
    Exponents x = f.images()[i];
    x.resize(nt + s.size(), 0);
    x[nt + i] = 1;
    graph.push_back(std::move(x));
  }
  Subgroup gamma = subgroup_closure(*prod, graph);
  std::vector<Exponents> ker;
  const auto depths = gamma.leading_depths();
  for (std::size_t r = 0; r < depths.size(); ++r)
    if (depths[r] >= nt) ker.emplace_back(gamma.generators()[r].begin() + nt, gamma.generators()[r].end());
  return subgroup_closure(s, ker);
}

std::vector<std::uint64_t> abelian_invariants(const Subgroup& s, const Subgroup& t) {
  const PcPresentation& g = s.parent();
  const unsigned p = g.prime();
  for (const auto& x : s.generators())
    for (const auto& y : s.generators())
      if (!t.contains(g.commutator(x, y))) throw std::invalid_argument("abelian_invariants: quotient is not abelian");
  for (const auto& y : t.generators())
    if (!s.contains(y)) throw std::invalid_argument("abelian_invariants: T is not contained in S");
  const unsigned base = t.rank_of_sequence();
  std::vector<unsigned> d{s.rank_of_sequence() - base};
  std::vector<Exponents> pw = s.generators();
  while (d.back() > 0) {
    for (auto& x : pw) x = g.power(x, p);
    Subgroup u = t;
    for (const auto& x : pw) u.add(x);
    d.push_back(u.rank_of_sequence() - base);
  }
  // d[i] - d[i+1] counts cyclic factors of order >= p^(i+1).
  std::vector<std::uint64_t> inv;
  for (std::size_t i = 0; i + 1 < d.size(); ++i) {
    const unsigned at_least = d[i] - d[i + 1];
    const unsigned at_least_next = i + 2 < d.size() ? d[i + 1] - d[i + 2] : 0;
    std::uint64_t q = 1;
    for (std::size_t k = 0; k <= i; ++k) q *= p;
    for (unsigned c = 0; c < at_least - at_least_next; ++c) inv.push_back(q);
  }
  std::sort(inv.begin(), inv.end());
  return inv;
}

std::vector<std::uint64_t> abelian_invariants(const Subgroup& s) {
  return abelian_invariants(s, Subgroup(s.parent()));
}

std::vector<std::uint64_t> abelianization_invariants(const PcPresentation& g) {
  return abelian_invariants(Subgroup::whole(g), derived_subgroup(g));
}

bool is_bicyclic(const Subgroup& s) {
  if (!s.is_abelian()) return false;
  return s.rank_of_sequence() - power_subgroup(s, 1).rank_of_sequence() <= 2;
}

std::vector<ClassOrbit> class_orbits(const PcPresentation& g) {
  const std::uint64_t total = g.order();
  if (total > (1ull << 28)) throw std::length_error("class_orbits: group too large for orbit enumeration");
  std::vector<bool> seen(total, false);
  std::vector<ClassOrbit> out;
  const auto gens = pc_generators(g);
  std::vector<Exponents> gen_inv;
  for (const auto& x : gens) gen_inv.push_back(g.inverse(x));
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    if (seen[idx]) continue;
    ClassOrbit c;
    c.rep = g.from_index(idx);
    c.centralizer = Subgroup(g);
    std::unordered_map<std::uint64_t, std::size_t> pos;
    c.members.push_back(c.rep);
    c.conjugators.push_back(g.identity());
    pos[idx] = 0;
    seen[idx] = true;
    for (std::size_t k = 0; k < c.members.size(); ++k) {
      for (unsigned i = 0; i < gens.size(); ++i) {
        Exponents z = g.multiply(g.multiply(gen_inv[i], c.members[k]), gens[i]);
        const std::uint64_t zi = g.index_of(z);
        auto it = pos.find(zi);
        if (it == pos.end()) {
          pos[zi] = c.members.size();
          seen[zi] = true;
          c.members.push_back(std::move(z));
          c.conjugators.push_back(g.multiply(c.conjugators[k], gens[i]));
        } else {
          // Schreier generator t_k g_i t_z^-1 fixes the representative.
          Exponents sg = g.multiply(g.multiply(c.conjugators[k], gens[i]), g.inverse(c.conjugators[it->second]));
          c.centralizer.add(sg);
        }
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<ConjugacyClass> conjugacy_classes(const PcPresentation& g) {
  std::vector<ConjugacyClass> out;
  for (auto& c : class_orbits(g)) out.push_back({c.rep, c.members.size(), c.centralizer.generators()});
  return out;
}

Subgroup centralizer(const PcPresentation& g, const Exponents& x) {
  Subgroup c(g);
  std::unordered_map<std::uint64_t, Exponents> conj{{g.index_of(x), g.identity()}};
  std::vector<Exponents> queue{x};
  const auto gens = pc_generators(g);
  for (std::size_t k = 0; k < queue.size(); ++k) {
    const Exponents t = conj[g.index_of(queue[k])];
    for (const auto& y : gens) {
      Exponents z = g.conjugate(queue[k], y);
      const std::uint64_t zi = g.index_of(z);
      Exponents tz = g.multiply(t, y);
      auto it = conj.find(zi);
      if (it == conj.end()) {
        conj.emplace(zi, std::move(tz));
        queue.push_back(std::move(z));
      } else {
        c.add(g.multiply(tz, g.inverse(it->second)));
      }
    }
  }
  return c;
}

void for_each_commuting_pair(const PcPresentation& g, PairMode mode,
                             const std::function<void(const Exponents&, const Exponents&)>& visit) {
  for (const auto& c : class_orbits(g)) {
    const auto cent = c.centralizer.elements();
    if (mode == PairMode::bicyclic) {
      for (const auto& y : cent) visit(c.rep, y);
      continue;
    }
    for (std::size_t k = 0; k < c.members.size(); ++k) {
      const Exponents& t = c.conjugators[k];
      const Exponents ti = g.inverse(t);
      for (const auto& y : cent) visit(c.members[k], g.multiply(g.multiply(ti, y), t));
    }
  }
}

std::vector<Subgroup> enumerate_bicyclic_subgroups(const PcPresentation& g, PairMode mode) {
  std::set<std::vector<std::uint64_t>> seen;
  std::vector<Subgroup> out;
  for_each_commuting_pair(g, mode, [&](const Exponents& x, const Exponents& y) {
    Subgroup a = subgroup_closure(g, {x, y});
    std::vector<std::uint64_t> key;
    for (const auto& s : a.generators()) key.push_back(g.index_of(s));
    if (seen.insert(std::move(key)).second) out.push_back(std::move(a));
  });
  return out;
}

}  // namespace b0lab
