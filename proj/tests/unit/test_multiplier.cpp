#include "doctest.h"

#include "b0lab/catalog.hpp"
#include "b0lab/multiplier.hpp"
#include "test_support.hpp"

using namespace b0lab;

namespace {

using Inv = std::vector<std::uint64_t>;

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

TEST_CASE("tau presentation doubles the generators") {
  auto g = build_small("heisenberg", 3);
  const auto f = tau_presentation(*g);
  CHECK(f.gens.size() == 6);
  CHECK_NOTHROW(f.validate());
}

TEST_CASE("exterior square of small groups") {
  SUBCASE("C3: W trivial, |tau| = 9") {
    const auto d = exterior_square(build_small("cyclic:1", 3));
    CHECK(d.tau.group->order() == 9);
    CHECK(d.wedge.order() == 1);
    CHECK(d.multiplier.order() == 1);
  }
  SUBCASE("C3 x C3: M = (3)") { CHECK(schur_multiplier(build_small("elementary:2", 3)) == Inv{3}); }
  SUBCASE("Heisenberg: M = (3, 3)") { CHECK(schur_multiplier(build_small("heisenberg", 3)) == Inv{3, 3}); }
  SUBCASE("cyclic groups have trivial multiplier") {
    for (unsigned p : {3u, 5u}) CHECK(schur_multiplier(build_small("cyclic:3", p)).empty());
  }
  SUBCASE("elementary abelian rank r gives rank r(r-1)/2") {
    CHECK(schur_multiplier(build_small("elementary:3", 5)) == Inv{5, 5, 5});
    CHECK(schur_multiplier(build_abelian({1, 1, 1, 1, 1}, 3)).size() == 10);
  }
}

TEST_CASE("order identities on every catalog group at p = 3") {
  for (const auto& e : catalog(3)) {
    INFO(e.id.label());
    const auto d = exterior_square(e.group);
    const std::uint64_t n = e.group->order();
    CHECK(d.tau.group->order() == n * n * d.wedge.order());
    CHECK(d.wedge.order() == d.multiplier.order() * derived_subgroup(*e.group).order());
    CHECK(d.projection.validate());
    CHECK(d.kappa.validate());
  }
}

TEST_CASE("commuting wedges") {
  auto g = build_phi10(3, "28");
  const auto d = exterior_square(g);
  const Subgroup whole = Subgroup::whole(*d.wedge_group);
  for (std::uint64_t i = 0; i < g->order(); i += 17) {
    const auto x = g->from_index(i);
    CHECK(d.wedge_group->is_identity(commuting_wedge(d, x, x)));
    const auto z = g->generator(4);
    const auto w = commuting_wedge(d, x, z);
    CHECK(d.multiplier.contains(w));
    // x ^ y = (y ^ x)^-1
    CHECK(d.wedge_group->multiply(w, commuting_wedge(d, z, x)) == d.wedge_group->identity());
  }
  CHECK_THROWS_AS(commuting_wedge(d, g->generator(0), g->generator(1)), std::invalid_argument);
}

TEST_CASE("bilinearity of wedges on an abelian subgroup") {
  auto g = build_phi6(3, "221a");
  const auto d = exterior_square(g);
  const Subgroup a = subgroup_closure(*g, {g->generator(3), g->generator(4), g->generator(2)});
  REQUIRE(a.is_abelian());
  const auto elts = a.elements();
  const auto& w = *d.wedge_group;
  for (std::size_t i = 0; i < elts.size(); i += 3)
    for (std::size_t j = 0; j < elts.size(); j += 5)
      for (std::size_t k = 0; k < elts.size(); k += 7) {
        const auto lhs = commuting_wedge(d, g->multiply(elts[i], elts[j]), elts[k]);
        const auto rhs = w.multiply(commuting_wedge(d, elts[i], elts[k]), commuting_wedge(d, elts[j], elts[k]));
        CHECK(lhs == rhs);
      }
}

TEST_CASE("B0 on the p = 3 catalog: bicyclic reduction matches full enumeration") {
  for (const auto& e : catalog(3)) {
    INFO(e.id.label());
    const auto d = exterior_square(e.group);
    const auto full = commuting_wedge_closure_serial(d, PairMode::full);
    const auto reduced = commuting_wedge_closure_serial(d, PairMode::bicyclic);
    const auto parallel = commuting_wedge_closure_parallel(d, PairMode::bicyclic);
    CHECK(full.m0 == reduced.m0);
    CHECK(parallel.m0 == reduced.m0);
    CHECK(full.pairs_visited == test::brute_force_commuting_pairs(*e.group));
    const bool nonzero = full.m0.order() != d.multiplier.order();
    CHECK(nonzero == (e.id.family == 10));
  }
}

TEST_CASE("pair cap makes the report non-authoritative") {
  TensorOptions opt;
  opt.pair_cap = 10;
  const auto r = b0_tensor(build_phi10(3, "28"), opt);
  CHECK_FALSE(r.authoritative);
}

TEST_CASE("multiplier and B0 match the reference for order 81 and 64") {
  for (const auto& [dir, q] : {std::pair<std::string, unsigned>{"order81", 81}, {"order64", 64}}) {
    for (const auto& [id, row] : test::load_reference(test::data_path(dir + "/invariants.tsv"))) {
      INFO(dir << " id " << id);
      auto g = load_pcp(test::data_path(dir + "/sg" + std::to_string(q) + "_" + std::to_string(id) + ".pcp"));
      const auto r = b0_tensor(g);
      CHECK(format_invariants(r.multiplier_invariants) == row.multiplier);
      CHECK(format_invariants(r.invariants) == row.b0);
    }
  }
}

TEST_CASE("sample of the order-243 corpus") {
  const auto ref = test::load_reference(test::data_path("order243/invariants.tsv"));
  REQUIRE(ref.size() == 67);
  TensorOptions opt;
  opt.pairs = PairMode::bicyclic;
  for (unsigned id : {1u, 2u, 10u, 28u, 29u, 30u, 33u, 56u, 61u, 67u}) {
    INFO("SmallGroup(243," << id << ")");
    auto g = load_pcp(test::data_path("order243/sg243_" + std::to_string(id) + ".pcp"));
    const auto r = b0_tensor(g, opt);
    CHECK(format_invariants(r.multiplier_invariants) == ref.at(id).multiplier);
    CHECK(format_invariants(r.invariants) == ref.at(id).b0);
  }
}

TEST_CASE("verification table") {
  SUBCASE("catalog sample at p = 3") {
    std::vector<CorpusEntry> corpus;
    for (const char* label : {"phi10:28", "phi6:221a", "phi5:1^5", "phi1:5"})
      corpus.push_back({label, catalog_lookup(label, 3).group, std::nullopt});
    TensorOptions opt;
    opt.pairs = PairMode::bicyclic;
    const auto t = verify_theorem(3, corpus, opt);
    CHECK(t.ok());
    CHECK(t.nonzero == 1);
    CHECK(t.rows[0].phi10);
    CHECK_FALSE(t.rows[1].phi10);
  }
  SUBCASE("refusals") {
    CHECK_THROWS_AS(verify_theorem(2, {}), std::invalid_argument);
    std::vector<CorpusEntry> bad{{"small", build_small("heisenberg", 3), std::nullopt}};
    CHECK_THROWS_AS(verify_theorem(3, bad), std::invalid_argument);
  }
  SUBCASE("a wrong membership claim is reported as an offender") {
    std::vector<CorpusEntry> corpus{{"claimed", build_phi6(3, "221a"), true}};
    const auto t = verify_theorem(3, corpus, {});
    CHECK_FALSE(t.ok());
    CHECK(t.offenders == std::vector<std::string>{"claimed"});
  }
}

TEST_CASE("nilpotency and exponent-p class") {
  CHECK(nilpotency_class(*build_phi10(3, "28")) == 4);
  CHECK(nilpotency_class(*build_small("cyclic:5", 3)) == 1);
  CHECK(exponent_p_class(*build_small("cyclic:5", 3)) == 5);
  CHECK(ipow(3, 5) == build_small("cyclic:5", 3)->order());
}
