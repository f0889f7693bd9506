#include "doctest.h"

#include <numeric>

#include "b0lab/catalog.hpp"
#include "b0lab/subgroup.hpp"
#include "test_support.hpp"

using namespace b0lab;

namespace {

unsigned brute_order_mod(unsigned a, unsigned p) {
  unsigned k = 1, x = a % p;
  while (x != 1) {
    x = x * a % p;
    ++k;
  }
  return k;
}

bool brute_is_square(unsigned a, unsigned p) {
  for (unsigned x = 1; x < p; ++x)
    if (x * x % p == a % p) return true;
  return false;
}

}  // namespace

TEST_CASE("family counts") {
  SUBCASE("Phi10 count and totals for p >= 5") {
    for (unsigned p : {5u, 7u, 11u, 13u}) {
      INFO("p = " << p);
      const auto c = family_counts(p);
      const unsigned g3 = std::gcd(p - 1, 3u), g4 = std::gcd(p - 1, 4u);
      CHECK(c.phi10 == 1 + g4 + g3);
      CHECK(c.per_family[3] == p + 8);
      CHECK(c.per_family[5] == p + 7);
      CHECK(c.total == 2 * p + 61 + g4 + 2 * g3);
      CHECK(c.total == c.bagnera);
    }
    CHECK(family_counts(5).phi10 == 6);
    CHECK(family_counts(5).total == 77);
    CHECK(family_counts(7).phi10 == 6);
    CHECK(family_counts(11).phi10 == 4);
    CHECK(family_counts(13).phi10 == 8);
  }
  SUBCASE("p = 3 corrections") {
    const auto c = family_counts(3);
    CHECK(c.per_family[5] == 7);
    CHECK(c.phi10 == 3);
    CHECK(c.total == 67);
  }
  CHECK_THROWS_AS(family_counts(2), std::invalid_argument);
}

TEST_CASE("gap id tables") {
  CHECK(gap_id_map(3).phi10 == std::vector<unsigned>{28, 29, 30});
  CHECK(gap_id_map(5).phi10 == std::vector<unsigned>{33, 34, 35, 36, 37, 38});
  for (unsigned p : {3u, 5u, 7u, 11u}) CHECK(gap_id_map(p).phi10.size() == family_counts(p).phi10);
}

TEST_CASE("catalog at p = 3 and p = 5") {
  const auto c3 = catalog(3);
  CHECK(c3.size() == 7 + 2 + 7 + 5 + 3);
  for (unsigned p : {3u, 5u}) {
    for (const auto& e : catalog(p)) {
      INFO(e.id.label());
      CHECK(e.group->order() == p * p * p * p * p);
      CHECK(e.group->consistency_failures(true).empty());
      CHECK(test::associative_on_sample(*e.group, 200));
      CHECK(abelianization_invariants(*e.group) == test::abelianization_by_smith_form(*e.group));
    }
  }
  unsigned phi10 = 0;
  for (const auto& e : catalog(5)) phi10 += e.id.family == 10;
  CHECK(phi10 == family_counts(5).phi10);
}

TEST_CASE("structural values of the Phi10 presentation") {
  for (unsigned p : {3u, 5u, 7u}) {
    INFO("p = " << p);
    const auto g = build_phi10(p, family_variants(10, p).front());
    CHECK(center(*g).order() == p);
    CHECK(derived_subgroup(*g).order() == p * p * p);
    const Subgroup n = subgroup_closure(*g, {g->generator(3), g->generator(4)});
    REQUIRE(n.is_normal());
    const auto q = quotient(g, n);
    CHECK(q.group->order() == p * p * p);
    CHECK(derived_subgroup(*q.group).order() == p);
    for (unsigned k = 0; k < 3; ++k) CHECK(q.group->order_of(q.group->generator(k)) == p);
    CHECK(test::phi10_collection_failures(*g).empty());
  }
}

TEST_CASE("catalog lookup") {
  CHECK(catalog_lookup("phi10:28", 3).gap_id == 28u);
  CHECK(catalog_lookup("phi7:56", 3).gap_id == 56u);
  CHECK(catalog_lookup("phi1:2,2,1", 3).group->order() == 243);
  CHECK(catalog_lookup("phi1:5", 5).group->order() == 3125);
  CHECK(catalog_lookup("small:heisenberg", 5).group->order() == 125);
  CHECK_THROWS_AS(catalog_lookup("phi10", 3), std::invalid_argument);
  CHECK_THROWS_AS(catalog_lookup("zeta:1", 3), std::invalid_argument);
  CHECK_THROWS(catalog_lookup("phi10:nope", 3));
}

TEST_CASE("number theory context") {
  for (unsigned p = 3; p < 100; p += 2) {
    bool prime = true;
    for (unsigned d = 3; d * d <= p; d += 2) prime = prime && p % d;
    if (!prime) continue;
    INFO("p = " << p);
    const NumberTheoryContext nt(p);
    CHECK(brute_order_mod(nt.g, p) == p - 1);
    for (unsigned a = 2; a < nt.g; ++a) CHECK(brute_order_mod(a, p) != p - 1);
    CHECK_FALSE(brute_is_square(nt.nu, p));
    for (unsigned a = 2; a < nt.nu; ++a) CHECK(brute_is_square(a, p));
    CHECK(nt.alpha == nt.g);
    for (unsigned a = 1; a < p; ++a) CHECK(a * nt.inv(a) % p == 1);
    CHECK(is_primitive_root(nt.g, p));
  }
}

TEST_CASE("pcp text format") {
  SUBCASE("minimal") {
    const auto g = parse_pcp("p 3\ngens 1\n");
    CHECK(g->order() == 3);
  }
  SUBCASE("round trip") {
    for (const auto& e : catalog(3)) {
      const auto text = serialize_pcp(*e.group);
      const auto back = parse_pcp(text);
      CHECK(back->relations().powers == e.group->relations().powers);
      CHECK(back->relations().comms == e.group->relations().comms);
      CHECK(serialize_pcp(*back) == text);
    }
  }
  SUBCASE("syntax errors carry positions") {
    try {
      parse_pcp("p 3\ngens 2\ncomm 3 1 : 2^1\n");
      FAIL("expected a syntax error");
    } catch (const PcpSyntaxError& e) {
      CHECK(e.line == 3);
    }
    CHECK_THROWS_AS(parse_pcp("gens 2\n"), PcpSyntaxError);
    CHECK_THROWS_AS(parse_pcp("p 4\ngens 1\n"), PcpSyntaxError);
    CHECK_THROWS_AS(parse_pcp("p 3\ngens 2\ncomm 2 1 : 1^1\n"), std::exception);
  }
  SUBCASE("inconsistent presentations are rejected") {
    // a^3 = b but [b, a] = c: a does not commute with its own power
    CHECK_THROWS_AS(parse_pcp("p 3\ngens 3\npow 1 : 2^1\ncomm 2 1 : 3^1\n"), InconsistentPresentation);
  }
  SUBCASE("ingested files") {
    for (unsigned id : {1u, 28u, 67u}) {
      const auto g = load_pcp(test::data_path("order243/sg243_" + std::to_string(id) + ".pcp"));
      CHECK(g->order() == 243);
    }
  }
}
