// One pass/fail line per acceptance criterion. Budgets are wall-clock seconds.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>

#include "b0lab/catalog.hpp"
#include "b0lab/cohomology.hpp"
#include "b0lab/isoclinism.hpp"
#include "b0lab/multiplier.hpp"
#include "test_support.hpp"

using namespace b0lab;

namespace {

constexpr double kCatalogTotal = 30 * 60, kCatalogPerGroup = 10 * 60;
constexpr double kCorpus243 = 4 * 3600;
constexpr double kLemmaSmallP = 10 * 60, kLemmaP7 = 2 * 3600;
constexpr double kPhi10P5 = 8 * 3600;
constexpr double kProperties = 10 * 60;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

Subgroup gens_subgroup(const PcPresentation& g, std::initializer_list<unsigned> idx) {
  std::vector<Exponents> v;
  for (unsigned i : idx) v.push_back(g.generator(i));
  return subgroup_closure(g, v);
}

std::vector<CorpusEntry> corpus243() {
  std::vector<CorpusEntry> out;
  for (unsigned id = 1; id <= 67; ++id)
    out.push_back({std::to_string(id), load_pcp(test::data_path("order243/sg243_" + std::to_string(id) + ".pcp")), std::nullopt});
  return out;
}

// Shared between criteria 2 and 7.
std::vector<CorpusEntry> g_corpus243;
std::vector<B0Report> g_reports243;

Outcome c1_catalog() {
  std::vector<CorpusEntry> corpus;
  for (const auto& e : catalog(3)) corpus.push_back({e.id.label(), e.group, std::nullopt});
  const auto t0 = Clock::now();
  double worst = 0;
  VerificationTable table;
  table.p = 3;
  for (const auto& e : corpus) {
    const auto t = Clock::now();
    auto one = verify_theorem(3, {e});
    worst = std::max(worst, seconds_since(t));
    table.nonzero += one.nonzero;
    table.offenders.insert(table.offenders.end(), one.offenders.begin(), one.offenders.end());
    table.rows.push_back(one.rows.front());
  }
  const double total = seconds_since(t0);
  std::set<std::string> nonzero, expected{"phi10:28", "phi10:29", "phi10:30"};
  for (const auto& r : table.rows)
    if (r.report.nonzero()) nonzero.insert(r.label);
  std::ostringstream os;
  os << table.rows.size() << " groups, B0 != 0 on";
  for (const auto& s : nonzero) os << ' ' << s;
  os << "; slowest " << worst << " s, total " << total << " s";
  return {table.ok() && nonzero == expected && table.rows.size() == 24 && worst <= kCatalogPerGroup && total <= kCatalogTotal,
          os.str()};
}

Outcome c2_corpus243() {
  const auto ref = test::load_reference(test::data_path("order243/invariants.tsv"));
  g_corpus243 = corpus243();
  TensorOptions opt;
  opt.pairs = PairMode::bicyclic;
  const auto t0 = Clock::now();
  const auto table = verify_theorem(3, g_corpus243, opt);
  const double total = seconds_since(t0);
  std::set<unsigned> nonzero;
  unsigned ref_mismatch = 0;
  for (const auto& r : table.rows) {
    g_reports243.push_back(r.report);
    const unsigned id = static_cast<unsigned>(std::stoul(r.label));
    if (r.report.nonzero()) nonzero.insert(id);
    if (format_invariants(r.report.invariants) != ref.at(id).b0 ||
        format_invariants(r.report.multiplier_invariants) != ref.at(id).multiplier)
      ++ref_mismatch;
  }
  std::ostringstream os;
  os << table.rows.size() << " groups, B0 != 0 on ids";
  for (auto id : nonzero) os << ' ' << id;
  os << ", Phi10 by isoclinism " << (table.ok() ? "matches" : "MISMATCH") << ", " << ref_mismatch
     << " rows differ from the reference table; " << total << " s";
  return {table.ok() && nonzero == std::set<unsigned>{28, 29, 30} && ref_mismatch == 0 && total <= kCorpus243, os.str()};
}

Outcome c3_oracle_agreement() {
  std::vector<PcGroup> groups;
  const std::vector<std::vector<unsigned>> partitions{{1}, {2}, {1, 1}, {3}, {2, 1}, {1, 1, 1}, {4}, {3, 1}, {2, 2}, {2, 1, 1}, {1, 1, 1, 1}};
  for (const auto& part : partitions) {
    std::string label;
    for (auto k : part) label += (label.empty() ? "" : ",") + std::to_string(k);
    groups.push_back(build_small("abelian:" + label, 3));
  }
  groups.push_back(build_small("heisenberg", 3));
  groups.push_back(build_small("metacyclic", 3));
  for (unsigned id = 1; id <= 15; ++id) groups.push_back(load_pcp(test::data_path("order81/sg81_" + std::to_string(id) + ".pcp")));
  unsigned agree = 0;
  std::string bad;
  for (const auto& g : groups) {
    const auto t = b0_tensor(g), o = b0_oracle(g, 81);
    if (t.invariants.empty() && o.invariants.empty() && t.multiplier_invariants == o.multiplier_invariants) ++agree;
    else bad += " " + g->name();
  }
  std::ostringstream os;
  os << agree << "/" << groups.size() << " groups (11 abelian types, 2 of order 27, 15 of order 81) with B0 = 0 and equal M";
  if (!bad.empty()) os << "; differ:" << bad;
  return {agree == groups.size(), os.str()};
}

Outcome c4_certificates() {
  std::ostringstream os;
  bool ok = true;
  for (unsigned p : {3u, 5u, 7u}) {
    const auto mode = p == 7 ? PairMode::bicyclic : PairMode::full;
    const auto t0 = Clock::now();
    unsigned holds = 0, count = 0;
    for (const auto& v : family_variants(10, p)) {
      ++count;
      holds += lemma22_check(build_phi10(p, v), {}, mode).holds;
    }
    const double s = seconds_since(t0);
    ok = ok && holds == count && s <= (p == 7 ? kLemmaP7 : kLemmaSmallP);
    os << "nonvanishing p=" << p << " " << holds << "/" << count << " (" << s << " s); ";
  }
  for (unsigned p : {3u, 5u}) {
    const auto g = build_phi6(p, "221a");
    const Subgroup n = gens_subgroup(*g, {0, 2, 3, 4});
    const auto u = g->generator(1);
    const auto cert = thm56_certificate(g, n, u);
    const auto module = character_module(*g, n, u, p);
    const auto h1 = cyclic_h1(module);
    bool branch = false;
    if (p == 3) {
      branch = h1.invariants.empty();
    } else {
      // some class has c(f2, f2^4, f2^i) = i/5 for every i
      for (std::size_t e = 1; e < h1.elements.size() && !branch; ++e) {
        CyclicCocycle gamma{u, {}};
        for (const auto& v : beta_cocycle(module, h1.elements[e])) gamma.values.push_back(character_from_vector(n, module.ring, v));
        const auto c = lambda_map(*g, n, gamma);
        bool all = true;
        for (unsigned i = 0; i < p; ++i) all = all && c[1][p - 1][i] == QZValue::from_fraction(p, i, p);
        branch = all;
      }
    }
    ok = ok && cert.holds && branch;
    os << "injectivity Phi6(221)a p=" << p << " " << (cert.holds ? "holds" : "FAILS") << " via "
       << (p == 3 ? "trivial H^1" : "c(f2,f2^4,f2^i) = i/5") << (branch ? "" : " (branch not observed)") << "; ";
  }
  return {ok, os.str()};
}

Outcome c5_goldens() {
  std::ostringstream os;
  bool ok = true;
  for (unsigned p : {3u, 5u, 7u}) {
    const auto g = build_phi10(p, family_variants(10, p).front());
    const Subgroup n = gens_subgroup(*g, {3, 4});
    const auto q = quotient(g, n).group;
    std::uint64_t exponent = 1;
    for (std::uint64_t i = 0; i < q->order(); ++i) exponent = std::max(exponent, q->order_of(q->from_index(i)));
    const bool structure = center(*g).order() == p && derived_subgroup(*g).order() == p * p * p &&
                           q->order() == p * p * p && exponent == p && !Subgroup::whole(*q).is_abelian();
    const auto heis = build_small("heisenberg", p);
    const bool h2 = schur_multiplier(heis) == std::vector<std::uint64_t>{p, p} &&
                    (p > 5 || h2_qz(heis).invariants == std::vector<std::uint64_t>{p, p});
    const auto fixed = h1_invariants(n, *g);
    bool h1 = fixed.size() == 1 && character_span_order(fixed) == p;
    if (h1) {
      // phi1: f4 -> 1/p, f5 -> 0 up to a unit
      const QZValue a = fixed[0](g->generator(3)), b = fixed[0](g->generator(4));
      h1 = !a.is_zero() && b.is_zero() && a.exponent() == 1;
    }
    const auto phi10_bad = test::phi10_collection_failures(*g);
    const auto phi6_bad = test::phi6_collection_failures(*build_phi6(p, "221a"));
    ok = ok && structure && h2 && h1 && phi10_bad.empty() && phi6_bad.empty();
    os << "p=" << p << (structure ? " structure" : " STRUCTURE") << (h2 ? " H2" : " H2-FAIL") << (h1 ? " H1" : " H1-FAIL")
       << " identities " << (phi10_bad.size() + phi6_bad.size()) << " failures; ";
  }
  return {ok, os.str()};
}

Outcome c6_counts() {
  bool ok = true;
  std::ostringstream os;
  for (unsigned p : {3u, 5u, 7u, 11u, 13u}) {
    const auto c = family_counts(p);
    const unsigned g3 = std::gcd(p - 1, 3u), g4 = std::gcd(p - 1, 4u);
    const unsigned phi10 = p == 3 ? 3 : 1 + g3 + g4;
    bool row = c.phi10 == phi10;
    if (p == 3) {
      row = row && c.per_family[5] == 7 && c.total == 67;
    } else {
      const std::array<unsigned, 10> list{7, 15, 13, p + 8, 2, p + 7, 5, 1, 2 + g3, 1 + g4 + g3};
      row = row && c.per_family == list && c.total == 2 * p + 61 + 2 * g3 + g4;
    }
    ok = ok && row;
    os << "p=" << p << ": Phi10 " << c.phi10 << ", total " << c.total << (row ? "" : " MISMATCH") << "; ";
  }
  return {ok, os.str()};
}

Outcome c7_isoclinism() {
  std::ostringstream os;
  bool ok = true;
  const std::vector<PcGroup> phi10{build_phi10(3, "28"), build_phi10(3, "29"), build_phi10(3, "30")};
  unsigned iso = 0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) {
      const auto r = is_isoclinic(phi10[i], phi10[j]);
      iso += r.isoclinic && validate_witness(commutator_pairing(phi10[i]), commutator_pairing(phi10[j]), *r.witness);
    }
  const std::vector<PcGroup> reps{build_phi5(3, "1^5"), build_phi6(3, "221a"), build_phi7(3, "56"), build_phi10(3, "28")};
  unsigned separated = 0;
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = i + 1; j < reps.size(); ++j) separated += !is_isoclinic(reps[i], reps[j]).isoclinic;
  ok = iso == 3 && separated == 6;
  os << iso << "/3 Phi10 pairs isoclinic with validated witnesses, " << separated << "/6 cross-family pairs separated; ";
  if (g_corpus243.empty()) g_corpus243 = corpus243();
  if (g_reports243.empty()) {
    TensorOptions opt;
    opt.pairs = PairMode::bicyclic;
    for (const auto& e : g_corpus243) g_reports243.push_back(b0_tensor(e.group, opt));
  }
  std::vector<PcGroup> groups;
  for (const auto& e : g_corpus243) groups.push_back(e.group);
  const auto labels = isoclinism_classes(groups);
  std::vector<std::pair<std::string, B0Report>> keyed;
  for (std::size_t i = 0; i < groups.size(); ++i) keyed.emplace_back(labels[i], g_reports243[i]);
  const auto rows = b0_constancy_report(keyed);
  unsigned constant = 0;
  for (const auto& r : rows) constant += r.constant;
  ok = ok && rows.size() == 10 && constant == rows.size();
  os << "order 243 corpus: " << rows.size() << " isoclinism classes, B0 constant on " << constant;
  return {ok, os.str()};
}

Outcome c8_disclosure() {
  const auto t0 = Clock::now();
  std::vector<CorpusEntry> corpus;
  for (const auto& v : family_variants(10, 5)) corpus.push_back({"phi10:" + v, build_phi10(5, v), true});
  TensorOptions opt;
  opt.pairs = PairMode::bicyclic;
  const auto table = verify_theorem(5, corpus, opt);
  const double s = seconds_since(t0);
  std::ostringstream os;
  os << "p=7 and p=11 whole-order runs out of scope; optional p=5 Phi10 run: " << table.nonzero << "/" << corpus.size()
     << " nonzero (GAP ids 33-38) in " << s << " s";
  return {table.ok() && table.nonzero == 6 && s <= kPhi10P5, os.str()};
}

Outcome c9_properties() {
  const auto t0 = Clock::now();
  const int rc = std::system(B0LAB_PROPERTY_BIN " > property_tests.log 2>&1");
  const double s = seconds_since(t0);
  std::ostringstream os;
  os << "property_tests exit " << rc << " in " << s << " s (log: property_tests.log)";
  return {rc == 0 && s <= kProperties, os.str()};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    bool gating;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "catalog verification at p=3", true, c1_catalog},
      {2, "order 243 corpus", true, c2_corpus243},
      {3, "oracle/tensor agreement", true, c3_oracle_agreement},
      {4, "criterion certificates", true, c4_certificates},
      {5, "structural golden values", true, c5_goldens},
      {6, "counting formulas", true, c6_counts},
      {7, "isoclinism", true, c7_isoclinism},
      {8, "out-of-scope disclosure (optional p=5 run)", false, c8_disclosure},
      {9, "property suites", true, c9_properties},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.1f s", seconds_since(t0));
    std::cout << (o.pass ? "PASS" : (c.gating ? "FAIL" : "FAIL (not gating)")) << "  criterion " << c.id << ": " << c.title << " | "
              << o.detail << " | " << secs << std::endl;
    if (!o.pass && c.gating) ++failed;
  }
  std::cout << (failed ? "acceptance: " + std::to_string(failed) + " gating criteria failed" : std::string("acceptance: all gating criteria passed"))
            << std::endl;
  return failed ? 1 : 0;
}
