#include "doctest.h"

#include "b0lab/catalog.hpp"
#include "b0lab/multiplier.hpp"
#include "generators.hpp"
#include "test_support.hpp"

using namespace b0lab;

namespace {

void check_orders(const PcGroup& g) {
  const auto d = exterior_square(g);
  const std::uint64_t n = g->order();
  CHECK(d.tau.group->order() == n * n * d.wedge.order());
  CHECK(d.wedge.order() == d.multiplier.order() * derived_subgroup(*g).order());
  const Subgroup gp = derived_subgroup(*g);
  for (unsigned i = 0; i < d.wedge_group->size(); ++i) CHECK(gp.contains(d.kappa.apply(d.wedge_group->generator(i))));
}

}  // namespace

TEST_CASE("order identities on catalog, corpus and random groups") {
  for (const auto& e : catalog(3)) {
    INFO(e.id.label());
    check_orders(e.group);
  }
  for (const auto& [id, row] : test::load_reference(test::data_path("order81/invariants.tsv"))) {
    INFO("order 81 id " << id);
    check_orders(load_pcp(test::data_path("order81/sg81_" + std::to_string(id) + ".pcp")));
  }
  for (unsigned p : {5u, 7u})
    for (const char* s : {"heisenberg", "metacyclic", "elementary:3", "cyclic:3"}) check_orders(build_small(s, p));
  test::Gen gen(21);
  for (unsigned t = 0; t < 30; ++t) {
    INFO("trial " << t);
    check_orders(gen.group(t % 3 ? 3 : 5));
  }
}

TEST_CASE("commuting wedges are bilinear and antisymmetric") {
  test::Gen gen(22);
  for (const char* label : {"phi10:28", "phi6:221a", "phi7:57", "phi5:2111"}) {
    INFO(label);
    const auto g = catalog_lookup(label, 3).group;
    const auto d = exterior_square(g);
    const auto& w = *d.wedge_group;
    for (unsigned t = 0; t < 300; ++t) {
      const auto z = gen.element(*g);
      const auto x = gen.commuting_with(*g, z), y = gen.commuting_with(*g, z);
      const auto xz = commuting_wedge(d, x, z), yz = commuting_wedge(d, y, z);
      CHECK(commuting_wedge(d, g->multiply(x, y), z) == w.multiply(xz, yz));
      CHECK(w.is_identity(w.multiply(xz, commuting_wedge(d, z, x))));
      CHECK(d.multiplier.contains(xz));
    }
  }
}

TEST_CASE("M0 is generated by commuting wedges and sits inside M") {
  test::Gen gen(23);
  for (unsigned t = 0; t < 12; ++t) {
    const auto g = gen.group(3);
    INFO("trial " << t << " order " << g->order());
    const auto d = exterior_square(g);
    const auto c = commuting_wedge_closure_serial(d, PairMode::bicyclic);
    for (const auto& h : c.m0.generators()) CHECK(d.multiplier.contains(h));
    for (unsigned k = 0; k < 50; ++k) {
      const auto x = gen.element(*g);
      CHECK(c.m0.contains(commuting_wedge(d, x, gen.commuting_with(*g, x))));
    }
    CHECK(commuting_wedge_closure_serial(d, PairMode::full).m0 == c.m0);
  }
}
