#include "doctest.h"

#include <set>

#include "b0lab/catalog.hpp"
#include "b0lab/isoclinism.hpp"
#include "b0lab/multiplier.hpp"
#include "test_support.hpp"

using namespace b0lab;

namespace {

std::uint64_t brute_center_order(const PcPresentation& g) {
  std::uint64_t z = 0;
  for (std::uint64_t i = 0; i < g.order(); ++i) {
    const auto x = g.from_index(i);
    bool central = true;
    for (unsigned k = 0; k < g.size() && central; ++k)
      central = g.multiply(x, g.generator(k)) == g.multiply(g.generator(k), x);
    z += central;
  }
  return z;
}

}  // namespace

TEST_CASE("commutator pairing agrees with direct commutators") {
  for (const char* label : {"phi10:28", "phi6:221a", "phi5:2111"}) {
    INFO(label);
    const auto g = catalog_lookup(label, 3).group;
    const auto cp = commutator_pairing(g);
    CHECK(cp.q_order * brute_center_order(*g) == g->order());
    const auto& q = *cp.central_quotient.group;
    for (std::uint64_t a = 0; a < q.order(); ++a)
      for (std::uint64_t b = 0; b < q.order(); b += 5) {
        const auto x = q.from_index(a), y = q.from_index(b);
        CHECK(cp.at(x, y) == g->commutator(cp.lift(x), cp.lift(y)));
      }
  }
}

TEST_CASE("isoclinism is reflexive and symmetric") {
  for (const char* label : {"phi10:29", "phi7:57", "phi1:2,2,1"}) {
    const auto g = catalog_lookup(label, 3).group;
    const auto r = is_isoclinic(g, g);
    REQUIRE(r.isoclinic);
    REQUIRE(r.witness);
    CHECK(validate_witness(commutator_pairing(g), commutator_pairing(g), *r.witness));
  }
  const auto a = build_phi6(3, "221a"), b = build_phi6(3, "221c1");
  CHECK(is_isoclinic(a, b).isoclinic == is_isoclinic(b, a).isoclinic);
}

TEST_CASE("the Phi10 groups at p = 3 are pairwise isoclinic") {
  const std::vector<PcGroup> g{build_phi10(3, "28"), build_phi10(3, "29"), build_phi10(3, "30")};
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      const auto r = is_isoclinic(g[i], g[j]);
      REQUIRE(r.isoclinic);
      CHECK(validate_witness(commutator_pairing(g[i]), commutator_pairing(g[j]), *r.witness));
    }
  for (const auto& x : g) CHECK(in_phi10(x));
}

TEST_CASE("representatives of different families are not isoclinic") {
  const std::vector<PcGroup> g{build_phi5(3, "1^5"), build_phi6(3, "221a"), build_phi7(3, "56"), build_phi10(3, "28")};
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      INFO(g[i]->name() << " vs " << g[j]->name());
      CHECK_FALSE(is_isoclinic(g[i], g[j]).isoclinic);
    }
  CHECK_FALSE(in_phi10(g[0]));
  CHECK_FALSE(in_phi10(g[2]));
}

TEST_CASE("a tampered witness is rejected") {
  const auto a = build_phi10(3, "28"), b = build_phi10(3, "29");
  auto r = is_isoclinic(a, b);
  REQUIRE(r.witness);
  auto w = *r.witness;
  REQUIRE_FALSE(w.phi_images.empty());
  const auto& g2 = *b;
  w.phi_images[0] = g2.multiply(w.phi_images[0], g2.generator(g2.size() - 1));
  CHECK_FALSE(validate_witness(commutator_pairing(a), commutator_pairing(b), w));
}

TEST_CASE("fingerprints") {
  const auto f = family_fingerprint(*build_phi10(3, "28"));
  CHECK(f.center == 3);
  CHECK(f.derived == 27);
  CHECK(f.central_quotient == 81);
  CHECK(f.lower_central == std::vector<std::uint64_t>{27, 9, 3, 1});
  CHECK(f.compatible(family_fingerprint(*build_phi10(3, "30"))));
  CHECK_FALSE(f.compatible(family_fingerprint(*build_phi7(3, "56"))));
  CHECK_FALSE(f.to_string().empty());
}

TEST_CASE("the p = 3 catalog splits into five isoclinism classes") {
  std::vector<PcGroup> groups;
  std::vector<unsigned> family;
  for (const auto& e : catalog(3)) {
    groups.push_back(e.group);
    family.push_back(e.id.family);
  }
  const auto labels = isoclinism_classes(groups);
  CHECK(std::set<std::string>(labels.begin(), labels.end()).size() == 5);
  for (std::size_t i = 0; i < groups.size(); ++i)
    for (std::size_t j = 0; j < groups.size(); ++j) CHECK((labels[i] == labels[j]) == (family[i] == family[j]));
}

TEST_CASE("B0 constancy report") {
  std::vector<std::pair<std::string, B0Report>> keyed;
  TensorOptions opt;
  opt.pairs = PairMode::bicyclic;
  for (const auto& e : catalog(3)) keyed.emplace_back("phi" + std::to_string(e.id.family), b0_tensor(e.group, opt));
  const auto rows = b0_constancy_report(keyed);
  CHECK(rows.size() == 5);
  for (const auto& r : rows) {
    INFO(r.family);
    CHECK(r.constant);
    CHECK((r.family == "phi10") == !r.invariants.front().empty());
  }
  B0Report odd;
  odd.name = "odd";
  odd.invariants = {3};
  keyed.emplace_back("phi5", odd);
  bool seen = false;
  for (const auto& r : b0_constancy_report(keyed))
    if (r.family == "phi5") {
      CHECK_FALSE(r.constant);
      seen = true;
    }
  CHECK(seen);
}

TEST_CASE("search budget") {
  const auto r = is_isoclinic(build_phi6(3, "221a"), build_phi6(3, "221d1"), 5);
  CHECK(r.isoclinic);
  CHECK(r.candidates_tried >= 1);
  CHECK(r.candidates_tried <= 5);
}
