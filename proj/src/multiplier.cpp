#include "b0lab/multiplier.hpp"

#include <chrono>

#include "b0lab/isoclinism.hpp"

namespace b0lab {

namespace {

FpWord shifted(const Word& w, unsigned offset) {
  FpWord r;
  for (const auto& l : w) r.push_back({l.gen + offset, static_cast<int>(l.exp)});
  return r;
}

FpWord letter(unsigned gen, int e = 1) { return {{gen, e}}; }

// Image under the projection of a normal word of tau, given images of the
// generators seen so far.
Exponents evaluate(const PcPresentation& g, const std::vector<Exponents>& img, const Word& w) {
  Exponents r = g.identity();
  for (const auto& l : w) r = g.multiply(r, g.power(img[l.gen], l.exp));
  return r;
}

Word without_last(const Word& w, unsigned gen) {
  if (w.empty() || w.back().gen != gen || w.back().exp != 1)
    throw GuardFailure("tau: defining relation does not end in its generator");
  return Word(w.begin(), w.end() - 1);
}

Homomorphism projection_from_definitions(const PcQuotient& q, const PcGroup& g) {
  const PcPresentation& t = *q.group;
  const unsigned n = g->size();
  std::vector<Exponents> img;
  for (unsigned k = 0; k < t.size(); ++k) {
    const Definition& d = q.definitions[k];
    Word prefix;
    Exponents value;
    if (d.kind == Definition::Kind::image) {
      prefix = without_last(t.to_word(q.images[d.a]), k);
      value = g->generator(d.a % n);
    } else if (d.kind == Definition::Kind::power) {
      prefix = without_last(t.power_tail(d.a), k);
      value = g->power(img[d.a], g->prime());
    } else {
      prefix = without_last(t.comm_tail(d.a, d.b), k);
      value = g->commutator(img[d.a], img[d.b]);
    }
    img.push_back(g->multiply(g->inverse(evaluate(*g, img, prefix)), value));
  }
  return Homomorphism(q.group, g, std::move(img));
}

struct PairTask {
  std::size_t orbit;
  std::size_t member;
  std::uint64_t pairs;
};

struct PairPlan {
  std::vector<ClassOrbit> orbits;
  std::vector<std::vector<Exponents>> cent;  // centralizer elements or generators per orbit
  std::vector<PairTask> tasks;
  std::uint64_t visited = 0;
  bool complete = true;
};

PairPlan plan_pairs(const PcPresentation& g, PairMode mode, std::uint64_t cap) {
  PairPlan plan;
  plan.orbits = class_orbits(g);
  for (std::size_t o = 0; o < plan.orbits.size(); ++o) {
    const auto& orb = plan.orbits[o];
    if (mode == PairMode::full) {
      plan.cent.push_back(orb.centralizer.elements());
      for (std::size_t m = 0; m < orb.members.size(); ++m) plan.tasks.push_back({o, m, plan.cent[o].size()});
    } else {
      plan.cent.push_back(orb.centralizer.generators());
      plan.tasks.push_back({o, 0, plan.cent[o].size()});
    }
  }
  std::size_t keep = 0;
  for (; keep < plan.tasks.size(); ++keep) {
    if (cap && plan.visited + plan.tasks[keep].pairs > cap) break;
    plan.visited += plan.tasks[keep].pairs;
  }
  plan.complete = keep == plan.tasks.size();
  plan.tasks.resize(keep);
  return plan;
}

void run_task(const ExteriorSquareData& d, PairMode mode, const PairPlan& plan, const PairTask& task, Subgroup& acc) {
  const PcPresentation& g = *d.group;
  const auto& orb = plan.orbits[task.orbit];
  const Exponents& c = orb.conjugators[task.member];
  const Exponents& x = mode == PairMode::full ? orb.members[task.member] : orb.rep;
  for (const auto& z : plan.cent[task.orbit]) {
    const Exponents y = mode == PairMode::full ? g.conjugate(z, c) : z;
    const Exponents w = commuting_wedge(d, x, y);
    if (!acc.contains(w)) acc.add(w);
  }
}

}  // namespace

FpPresentation tau_presentation(const PcPresentation& g) {
  const unsigned n = g.size();
  const int p = static_cast<int>(g.prime());
  FpPresentation f;
  for (unsigned i = 0; i < n; ++i) f.add_generator("x" + std::to_string(i + 1));
  for (unsigned i = 0; i < n; ++i) f.add_generator("y" + std::to_string(i + 1));
  for (unsigned off : {0u, n}) {
    for (unsigned i = 0; i < n; ++i) {
      f.relators.push_back(fp_concat({letter(i + off, p), fp_inverse(shifted(g.power_tail(i), off))}));
      for (unsigned k = 0; k < i; ++k)
        f.relators.push_back(fp_concat(
            {fp_commutator(letter(i + off), letter(k + off)), fp_inverse(shifted(g.comm_tail(i, k), off))}));
    }
  }
  for (unsigned k = 0; k < n; ++k) {
    const Exponents gk = g.generator(k);
    for (unsigned i = 0; i < n; ++i) {
      const FpWord xi_k = shifted(g.to_word(g.conjugate(g.generator(i), gk)), 0);
      for (unsigned j = 0; j < n; ++j) {
        const FpWord yj_k = shifted(g.to_word(g.conjugate(g.generator(j), gk)), n);
        const FpWord c = fp_commutator(letter(i), letter(j + n));
        const FpWord rhs_inv = fp_inverse(fp_commutator(xi_k, yj_k));
        f.relators.push_back(fp_concat({letter(k, -1), c, letter(k), rhs_inv}));
        f.relators.push_back(fp_concat({letter(k + n, -1), c, letter(k + n), rhs_inv}));
      }
    }
  }
  for (unsigned i = 0; i < n; ++i) {
    f.relators.push_back(fp_commutator(letter(i), letter(i + n)));
    for (unsigned j = i + 1; j < n; ++j)
      f.relators.push_back(
          fp_concat({fp_commutator(letter(i), letter(j + n)), fp_commutator(letter(j), letter(i + n))}));
  }
  return f;
}

unsigned nilpotency_class(const PcPresentation& g) {
  return static_cast<unsigned>(lower_central_series(g).size()) - 1;
}

unsigned exponent_p_class(const PcPresentation& g) {
  unsigned c = 0;
  Subgroup cur = Subgroup::whole(g);
  while (cur.order() > 1) {
    std::vector<Exponents> gens;
    for (const auto& a : cur.generators()) {
      gens.push_back(g.power(a, g.prime()));
      for (unsigned i = 0; i < g.size(); ++i) gens.push_back(g.commutator(a, g.generator(i)));
    }
    cur = normal_closure(g, gens);
    ++c;
  }
  return c;
}

Exponents ExteriorSquareData::lift_x(const Exponents& e) const {
  const PcPresentation& t = *tau.group;
  Exponents r = t.identity();
  for (unsigned i = 0; i < e.size(); ++i)
    if (e[i]) r = t.multiply(r, t.power(tau.images[i], e[i]));
  return r;
}

Exponents ExteriorSquareData::lift_y(const Exponents& e) const {
  const PcPresentation& t = *tau.group;
  const unsigned n = static_cast<unsigned>(e.size());
  Exponents r = t.identity();
  for (unsigned i = 0; i < n; ++i)
    if (e[i]) r = t.multiply(r, t.power(tau.images[n + i], e[i]));
  return r;
}

Exponents ExteriorSquareData::to_wedge(const Exponents& t) const {
  const auto a = wedge.decompose(t);
  return Exponents(a.begin(), a.end());
}

ExteriorSquareData exterior_square(const PcGroup& g, unsigned class_cap) {
  if (!g->is_consistent()) throw std::invalid_argument("exterior_square: inconsistent presentation");
  if (class_cap == 0) class_cap = 2 * exponent_p_class(*g) + 2;
  ExteriorSquareData d;
  d.group = g;
  auto f = std::make_shared<const FpPresentation>(tau_presentation(*g));
  d.tau = p_quotient(f, g->prime(), std::max(class_cap, 1u));
  if (!d.tau.stable)
    throw CapExceeded("tau(G) did not stabilize within class " + std::to_string(class_cap));
  const PcPresentation& t = *d.tau.group;
  const unsigned n = g->size();

  d.projection = projection_from_definitions(d.tau, g);
  if (!d.projection.validate()) throw GuardFailure("tau: projection onto G is not a homomorphism");

  std::vector<Exponents> wedges;
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) wedges.push_back(t.commutator(d.tau.images[i], d.tau.images[n + j]));
  d.wedge = normal_closure(t, wedges);
  if (t.size() != 2 * n + d.wedge.rank_of_sequence())
    throw GuardFailure("|tau| != |G|^2 |W|: " + std::to_string(t.size()) + " vs " + std::to_string(2 * n) + "+" +
                       std::to_string(d.wedge.rank_of_sequence()));

  d.wedge_group = d.wedge.as_presentation("W");
  std::vector<Exponents> kimg;
  for (const auto& w : d.wedge.generators()) kimg.push_back(d.projection.apply(w));
  d.kappa = Homomorphism(d.wedge_group, g, kimg);
  if (!d.kappa.validate()) throw GuardFailure("kappa is not a homomorphism");
  d.multiplier = kernel(d.kappa);
  const Subgroup image = subgroup_closure(*g, kimg);
  const Subgroup derived = derived_subgroup(*g);
  if (!(image == derived)) throw GuardFailure("image of kappa differs from G'");
  if (d.wedge.rank_of_sequence() != d.multiplier.rank_of_sequence() + derived.rank_of_sequence())
    throw GuardFailure("|W| != |M| |G'|");
  return d;
}

std::vector<std::uint64_t> schur_multiplier(const PcGroup& g, unsigned class_cap) {
  return abelian_invariants(exterior_square(g, class_cap).multiplier);
}

Exponents commuting_wedge(const ExteriorSquareData& d, const Exponents& x, const Exponents& y) {
  if (!d.group->is_identity(d.group->commutator(x, y)))
    throw std::invalid_argument("commuting_wedge: elements do not commute");
  const PcPresentation& t = *d.tau.group;
  return d.to_wedge(t.commutator(d.lift_x(x), d.lift_y(y)));
}

WedgeClosure commuting_wedge_closure_serial(const ExteriorSquareData& d, PairMode mode, std::uint64_t pair_cap) {
  const PairPlan plan = plan_pairs(*d.group, mode, pair_cap);
  WedgeClosure out{Subgroup(*d.wedge_group), plan.visited, plan.complete};
  for (const auto& task : plan.tasks) run_task(d, mode, plan, task, out.m0);
  return out;
}

WedgeClosure commuting_wedge_closure_parallel(const ExteriorSquareData& d, PairMode mode, std::uint64_t pair_cap) {
  const PairPlan plan = plan_pairs(*d.group, mode, pair_cap);
  WedgeClosure out{Subgroup(*d.wedge_group), plan.visited, plan.complete};
  const long long count = static_cast<long long>(plan.tasks.size());
#pragma omp parallel
  {
    Subgroup local(*d.wedge_group);
#pragma omp for schedule(dynamic, 1)
    for (long long i = 0; i < count; ++i) run_task(d, mode, plan, plan.tasks[i], local);
#pragma omp critical(b0lab_wedge_merge)
    for (const auto& s : local.generators()) out.m0.add(s);
  }
  return out;
}

B0Report b0_tensor(const PcGroup& g, const TensorOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  B0Report r;
  r.name = g->name();
  r.p = g->prime();
  r.n = g->size();
  r.method = Method::tensor;
  const ExteriorSquareData d = exterior_square(g, opt.class_cap);
  const WedgeClosure wc = opt.parallel ? commuting_wedge_closure_parallel(d, opt.pairs, opt.pair_cap)
                                       : commuting_wedge_closure_serial(d, opt.pairs, opt.pair_cap);
  for (const auto& s : wc.m0.generators())
    if (!d.multiplier.contains(s)) throw GuardFailure("commuting wedge outside M(G)");
  r.multiplier_invariants = abelian_invariants(d.multiplier);
  r.multiplier_order = d.multiplier.order();
  r.m0_order = wc.m0.order();
  r.invariants = abelian_invariants(d.multiplier, wc.m0);
  r.certificates.push_back("tau order p^" + std::to_string(d.tau.group->size()) + ", class " +
                           std::to_string(d.tau.cls) + "; |W| = p^" + std::to_string(d.wedge.rank_of_sequence()) +
                           "; pairs " + std::to_string(wc.pairs_visited) +
                           (opt.pairs == PairMode::full ? " (full)" : " (class reps x centralizer gens)"));
  if (!wc.complete) {
    r.authoritative = false;
    r.status = "pair cap exceeded";
  }
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

VerificationTable verify_theorem(unsigned p, const std::vector<CorpusEntry>& corpus, const TensorOptions& opt) {
  if (p < 3 || p % 2 == 0) throw std::invalid_argument("verify: p must be an odd prime");
  VerificationTable table;
  table.p = p;
  for (const auto& e : corpus) {
    if (e.group->prime() != p || e.group->size() != 5)
      throw std::invalid_argument("verify: " + e.label + " is not of order p^5");
    VerificationRow row;
    row.label = e.label;
    row.phi10 = e.phi10 ? *e.phi10 : in_phi10(e.group);
    row.report = b0_tensor(e.group, opt);
    row.report.name = e.label;
    row.agrees = row.report.authoritative && row.report.nonzero() == row.phi10;
    if (row.report.nonzero()) ++table.nonzero;
    if (!row.agrees) table.offenders.push_back(e.label);
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace b0lab
