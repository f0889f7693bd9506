#include "b0lab/isoclinism.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>
#include <unordered_map>

#include "b0lab/catalog.hpp"

namespace b0lab {

namespace {

// Frattini subgroup G'G^p.
Subgroup frattini(const PcPresentation& g) {
  std::vector<Exponents> gens = derived_subgroup(g).generators();
  for (unsigned i = 0; i < g.size(); ++i) gens.push_back(g.power(g.generator(i), g.prime()));
  return subgroup_closure(g, gens);
}

std::vector<Exponents> minimal_generators(const PcPresentation& g) {
  Subgroup acc = frattini(g);
  std::vector<Exponents> out;
  for (unsigned i = 0; i < g.size(); ++i) {
    Exponents x = g.generator(i);
    if (acc.contains(x)) continue;
    out.push_back(x);
    acc.add(x);
  }
  return out;
}

// Extends gens -> images to a homomorphism on <gens> by walking the Cayley
// graph. Returns the table (indexed by element index of the domain), or
// nullopt if the assignment is not well-defined.
std::optional<std::unordered_map<std::uint64_t, Exponents>> extend_hom(const PcPresentation& dom,
                                                                        const PcPresentation& cod,
                                                                        const std::vector<Exponents>& gens,
                                                                        const std::vector<Exponents>& images) {
  std::unordered_map<std::uint64_t, Exponents> table;
  std::unordered_map<std::uint64_t, Exponents> elem;
  std::deque<std::uint64_t> queue;
  const std::uint64_t id = dom.index_of(dom.identity());
  table[id] = cod.identity();
  elem[id] = dom.identity();
  queue.push_back(id);
  while (!queue.empty()) {
    const std::uint64_t cur = queue.front();
    queue.pop_front();
    const Exponents x = elem[cur];
    const Exponents tx = table[cur];
    for (std::size_t k = 0; k < gens.size(); ++k) {
      Exponents y = dom.multiply(x, gens[k]);
      Exponents ty = cod.multiply(tx, images[k]);
      const std::uint64_t yi = dom.index_of(y);
      auto it = table.find(yi);
      if (it == table.end()) {
        table.emplace(yi, std::move(ty));
        elem.emplace(yi, std::move(y));
        queue.push_back(yi);
      } else if (it->second != ty) {
        return std::nullopt;
      }
    }
  }
  return table;
}

bool injective(const PcPresentation& cod, const std::unordered_map<std::uint64_t, Exponents>& table) {
  std::vector<std::uint64_t> seen;
  seen.reserve(table.size());
  for (const auto& [k, v] : table) seen.push_back(cod.index_of(v));
  std::sort(seen.begin(), seen.end());
  return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
}

struct PhiResult {
  std::vector<Exponents> domain, images;
};

// Given theta as a full table on Q1, builds phi on G1' and checks the pairing.
std::optional<PhiResult> induced_phi(const CommutatorPairing& a, const CommutatorPairing& b,
                                     const std::unordered_map<std::uint64_t, Exponents>& theta,
                                     const std::vector<Exponents>& q1_gens) {
  const PcPresentation& g1 = *a.group;
  const PcPresentation& g2 = *b.group;
  const PcPresentation& q1 = *a.central_quotient.group;
  std::unordered_map<std::uint64_t, Exponents> forced;
  auto force = [&](const Exponents& x, const Exponents& y) {
    const Exponents& v1 = a.at(x, y);
    const Exponents& v2 = b.at(theta.at(q1.index_of(x)), theta.at(q1.index_of(y)));
    auto [it, fresh] = forced.emplace(g1.index_of(v1), v2);
    return fresh || it->second == v2;
  };
  const auto elements = Subgroup::whole(q1).elements();
  for (const auto& x : elements)
    for (const auto& s : q1_gens)
      if (!force(x, s)) return std::nullopt;

  // generators of G1' among the forced values
  PhiResult r;
  Subgroup acc(g1);
  for (const auto& [idx, img] : forced) {
    Exponents v = g1.from_index(idx);
    if (acc.contains(v)) continue;
    acc.add(v);
    r.domain.push_back(v);
    r.images.push_back(img);
  }
  if (acc.order() != a.derived.order()) return std::nullopt;
  auto phi = extend_hom(g1, g2, r.domain, r.images);
  if (!phi || phi->size() != a.derived.order() || !injective(g2, *phi)) return std::nullopt;
  for (const auto& [idx, img] : forced)
    if (phi->at(idx) != img) return std::nullopt;
  for (const auto& x : elements)
    for (const auto& y : elements)
      if (phi->at(g1.index_of(a.at(x, y))) != b.at(theta.at(q1.index_of(x)), theta.at(q1.index_of(y))))
        return std::nullopt;
  return r;
}

}  // namespace

Exponents CommutatorPairing::lift(const Exponents& a) const {
  Exponents e = group->identity();
  for (std::size_t k = 0; k < a.size(); ++k) e[central_quotient.factor_depths[k]] = a[k];
  return e;
}

const Exponents& CommutatorPairing::at(const Exponents& a, const Exponents& b) const {
  const auto& q = *central_quotient.group;
  return table[q.index_of(a) * q_order + q.index_of(b)];
}

CommutatorPairing commutator_pairing(const PcGroup& g) {
  CommutatorPairing cp;
  cp.group = g;
  const Subgroup z = center(*g);
  cp.central_quotient = quotient(g, z);
  cp.derived = derived_subgroup(*g);
  const PcPresentation& q = *cp.central_quotient.group;
  cp.q_order = q.order();
  cp.table.resize(cp.q_order * cp.q_order);
  const long long total = static_cast<long long>(cp.q_order);
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < total; ++i) {
    const Exponents x = cp.lift(q.from_index(i));
    for (std::uint64_t j = 0; j < cp.q_order; ++j)
      cp.table[i * cp.q_order + j] = g->commutator(x, cp.lift(q.from_index(j)));
  }
  for (unsigned i = 0; i < q.size(); ++i) {
    const Exponents a = q.generator(i);
    for (std::uint64_t j = 0; j < cp.q_order; ++j) {
      const Exponents b = q.from_index(j);
      for (const auto& zz : z.generators())
        if (g->commutator(g->multiply(cp.lift(a), zz), cp.lift(b)) != cp.at(a, b))
          throw GuardFailure("commutator pairing depends on the coset representative");
    }
  }
  return cp;
}

IsoclinismResult is_isoclinic(const PcGroup& g1, const PcGroup& g2, std::uint64_t budget) {
  IsoclinismResult res;
  if (!family_fingerprint(*g1).compatible(family_fingerprint(*g2))) return res;
  const CommutatorPairing a = commutator_pairing(g1);
  const CommutatorPairing b = commutator_pairing(g2);
  const PcPresentation& q1 = *a.central_quotient.group;
  const PcPresentation& q2 = *b.central_quotient.group;
  if (q1.order() != q2.order() || a.derived.order() != b.derived.order()) return res;
  if (q1.order() == 1) {
    res.isoclinic = true;
    res.witness = IsoclinismWitness{};
    return res;
  }
  const std::vector<Exponents> s = minimal_generators(q1);
  if (minimal_generators(q2).size() != s.size()) return res;
  const Subgroup phi2 = frattini(q2);
  const auto q2_elements = Subgroup::whole(q2).elements();

  std::vector<Exponents> t(s.size());
  // Depth-first over images of s_1, s_2, ...
  std::function<bool(std::size_t, const Subgroup&)> search = [&](std::size_t k, const Subgroup& span) -> bool {
    if (k == s.size()) {
      ++res.candidates_tried;
      if (budget && res.candidates_tried > budget) throw CapExceeded("isoclinism search budget exceeded");
      auto theta = extend_hom(q1, q2, s, t);
      if (!theta || theta->size() != q1.order() || !injective(q2, *theta)) return false;
      auto phi = induced_phi(a, b, *theta, s);
      if (!phi) return false;
      res.witness = IsoclinismWitness{s, t, phi->domain, phi->images};
      return true;
    }
    const std::uint64_t ord = q1.order_of(s[k]);
    const std::vector<Exponents> dom(s.begin(), s.begin() + k + 1);
    for (const auto& c : q2_elements) {
      if (q2.order_of(c) != ord || span.contains(c)) continue;
      t[k] = c;
      if (k > 0 && !extend_hom(q1, q2, dom, std::vector<Exponents>(t.begin(), t.begin() + k + 1))) continue;
      Subgroup next = span;
      next.add(c);
      if (search(k + 1, next)) return true;
    }
    return false;
  };
  res.isoclinic = search(0, phi2);
  if (!res.isoclinic) res.witness.reset();
  return res;
}

bool validate_witness(const CommutatorPairing& a, const CommutatorPairing& b, const IsoclinismWitness& w) {
  const PcPresentation& q1 = *a.central_quotient.group;
  const PcPresentation& q2 = *b.central_quotient.group;
  if (q1.order() != q2.order() || a.derived.order() != b.derived.order()) return false;
  if (q1.order() == 1) return true;
  auto theta = extend_hom(q1, q2, w.theta_domain, w.theta_images);
  if (!theta || theta->size() != q1.order() || !injective(q2, *theta)) return false;
  auto phi = extend_hom(*a.group, *b.group, w.phi_domain, w.phi_images);
  if (!phi || phi->size() != a.derived.order() || !injective(*b.group, *phi)) return false;
  const auto elements = Subgroup::whole(q1).elements();
  for (const auto& x : elements)
    for (const auto& y : elements) {
      auto it = phi->find(a.group->index_of(a.at(x, y)));
      if (it == phi->end()) return false;
      if (it->second != b.at(theta->at(q1.index_of(x)), theta->at(q1.index_of(y)))) return false;
    }
  return true;
}

bool Fingerprint::compatible(const Fingerprint& o) const {
  return central_quotient == o.central_quotient && derived == o.derived && lower_central == o.lower_central &&
         class_sizes == o.class_sizes;
}

std::string Fingerprint::to_string() const {
  std::ostringstream os;
  os << "|Z|=" << center << " |G'|=" << derived << " |G/Z|=" << central_quotient << " lcs=" << format_invariants(lower_central)
     << " exp=" << exponent << " ab=" << format_invariants(abelianization) << " classes={";
  bool first = true;
  for (auto [s, c] : class_sizes) {
    os << (first ? "" : ",") << s << ":" << c;
    first = false;
  }
  os << "}";
  return os.str();
}

Fingerprint family_fingerprint(const PcPresentation& g) {
  Fingerprint f;
  f.center = center(g).order();
  f.derived = derived_subgroup(g).order();
  f.central_quotient = g.order() / f.center;
  const auto lcs = lower_central_series(g);
  for (std::size_t i = 1; i < lcs.size(); ++i) f.lower_central.push_back(lcs[i].order());
  f.exponent = group_exponent(g);
  f.abelianization = abelianization_invariants(g);
  for (const auto& c : conjugacy_classes(g)) f.class_sizes[c.size] += c.size;
  for (auto& [s, count] : f.class_sizes) count /= f.center;
  return f;
}

bool in_phi10(const PcGroup& g) {
  if (g->size() != 5) return false;
  const unsigned p = g->prime();
  return is_isoclinic(g, build_phi10(p, p == 3 ? "28" : "1^5")).isoclinic;
}

std::vector<FamilyB0> b0_constancy_report(const std::vector<std::pair<std::string, B0Report>>& keyed) {
  std::vector<FamilyB0> out;
  std::map<std::string, std::size_t> slot;
  for (const auto& [key, rep] : keyed) {
    auto [it, fresh] = slot.emplace(key, out.size());
    if (fresh) out.push_back(FamilyB0{key, {}, {}, true});
    FamilyB0& f = out[it->second];
    if (!f.invariants.empty() && f.invariants.front() != rep.invariants) f.constant = false;
    f.members.push_back(rep.name);
    f.invariants.push_back(rep.invariants);
  }
  return out;
}

std::vector<std::string> isoclinism_classes(const std::vector<PcGroup>& groups, std::uint64_t budget) {
  std::vector<std::string> label(groups.size());
  std::vector<std::size_t> reps;
  std::vector<Fingerprint> fps;
  for (const auto& g : groups) fps.push_back(family_fingerprint(*g));
  for (std::size_t i = 0; i < groups.size(); ++i) {
    for (std::size_t r = 0; r < reps.size() && label[i].empty(); ++r)
      if (fps[i].compatible(fps[reps[r]]) && is_isoclinic(groups[i], groups[reps[r]], budget).isoclinic)
        label[i] = label[reps[r]];
    if (label[i].empty()) {
      reps.push_back(i);
      label[i] = "iso" + std::to_string(reps.size());
    }
  }
  return label;
}

}  // namespace b0lab
