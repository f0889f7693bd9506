#include "doctest.h"

#include "b0lab/catalog.hpp"
#include "b0lab/isoclinism.hpp"
#include "generators.hpp"

using namespace b0lab;

TEST_CASE("isoclinism is reflexive and symmetric on random catalog pairs") {
  test::Gen gen(41);
  const auto cat = catalog(3);
  for (unsigned t = 0; t < 40; ++t) {
    const auto& a = cat[gen.below(cat.size())];
    const auto& b = cat[gen.below(cat.size())];
    INFO(a.id.label() << " vs " << b.id.label());
    const auto ab = is_isoclinic(a.group, b.group), ba = is_isoclinic(b.group, a.group);
    CHECK(ab.isoclinic == ba.isoclinic);
    CHECK(ab.isoclinic == (a.id.family == b.id.family));
    if (ab.isoclinic) {
      CHECK(validate_witness(commutator_pairing(a.group), commutator_pairing(b.group), *ab.witness));
      CHECK(validate_witness(commutator_pairing(b.group), commutator_pairing(a.group), *ba.witness));
    }
    CHECK(is_isoclinic(a.group, a.group).isoclinic);
  }
}

TEST_CASE("a direct factor C_p does not change the isoclinism class") {
  test::Gen gen(42);
  const auto cat = catalog(3);
  const auto c3 = build_small("cyclic:1", 3);
  for (unsigned t = 0; t < 6; ++t) {
    const auto& e = cat[gen.below(cat.size())];
    INFO(e.id.label());
    const auto bigger = direct_product(*e.group, *c3);
    const auto r = is_isoclinic(e.group, bigger);
    REQUIRE(r.isoclinic);
    CHECK(validate_witness(commutator_pairing(e.group), commutator_pairing(bigger), *r.witness));
    CHECK(family_fingerprint(*e.group).compatible(family_fingerprint(*bigger)));
  }
}

TEST_CASE("fingerprints of isoclinic groups are compatible") {
  for (unsigned p : {3u, 5u}) {
    const auto cat = catalog(p);
    for (std::size_t i = 0; i < cat.size(); ++i)
      for (std::size_t j = 0; j < cat.size(); ++j)
        if (cat[i].id.family == cat[j].id.family)
          CHECK(family_fingerprint(*cat[i].group).compatible(family_fingerprint(*cat[j].group)));
  }
}
