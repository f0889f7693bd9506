#include "doctest.h"

#include "b0lab/catalog.hpp"
#include "b0lab/pquotient.hpp"
#include "b0lab/subgroup.hpp"

using namespace b0lab;

namespace {

std::shared_ptr<const FpPresentation> two_generator(std::vector<FpWord> rels) {
  auto f = std::make_shared<FpPresentation>();
  f->add_generator("x");
  f->add_generator("y");
  f->relators = std::move(rels);
  return f;
}

bool images_satisfy_relators(const PcQuotient& q) {
  for (const auto& r : q.source->relators)
    if (!q.group->is_identity(lift_word(q, r))) return false;
  return true;
}

bool images_generate(const PcQuotient& q) {
  return subgroup_closure(*q.group, q.images).order() == q.group->order();
}

}  // namespace

TEST_CASE("class 1 of <x, y | x^3, y^3, [x, y]>") {
  const FpWord x{{0, 1}}, y{{1, 1}};
  auto f = two_generator({{{0, 3}}, {{1, 3}}, fp_commutator(x, y)});
  auto q = p_quotient(f, 3, 5);
  CHECK(q.group->order() == 9);
  CHECK(q.cls == 1);
  CHECK(q.stable);
  CHECK(Subgroup::whole(*q.group).is_abelian());
}

TEST_CASE("free group of rank 2") {
  auto f = two_generator({});
  auto q1 = class1_quotient(f, 3);
  CHECK(q1.group->order() == 9);
  auto q2 = p_quotient(f, 3, 2);
  // x, y, [y, x], x^3, y^3
  CHECK(q2.group->order() == 243);
  CHECK_FALSE(q2.stable);
  CHECK(q2.group->is_consistent());
  CHECK(images_generate(q2));
  CHECK(p_quotient(f, 5, 2).group->order() == 3125);
}

TEST_CASE("exponent-3 relators on two generators") {
  // <x, y | x^3, y^3, (xy)^3, (xy^2)^3> is the Heisenberg group of order 27
  auto f = two_generator({{{0, 3}}, {{1, 3}}, {{0, 1}, {1, 1}, {0, 1}, {1, 1}, {0, 1}, {1, 1}},
                          {{0, 1}, {1, 2}, {0, 1}, {1, 2}, {0, 1}, {1, 2}}});
  auto q = p_quotient(f, 3, 6);
  CHECK(q.group->order() == 27);
  CHECK(q.cls == 2);
  CHECK(q.stable);
  CHECK(images_satisfy_relators(q));
}

TEST_CASE("dependent generators map into the quotient") {
  auto f = std::make_shared<FpPresentation>();
  f->add_generator("a");
  f->add_generator("b");
  f->add_generator("c");
  f->relators = {{{2, 1}, {0, -1}, {1, -1}}, {{0, 5}}, {{1, 5}}, fp_commutator({{0, 1}}, {{1, 1}})};
  auto q = p_quotient(f, 5, 4);
  CHECK(q.group->order() == 25);
  CHECK(q.stable);
  CHECK(images_satisfy_relators(q));
  CHECK(q.group->multiply(q.images[0], q.images[1]) == q.images[2]);
}

TEST_CASE("catalog groups are recovered from their relators") {
  for (unsigned p : {3u, 5u}) {
    for (const auto& e : catalog(p)) {
      INFO(e.id.label() << " p=" << p);
      auto f = std::make_shared<const FpPresentation>(fp_from_pc(*e.group));
      auto q = p_quotient(f, p, 10);
      CHECK(q.stable);
      CHECK(q.group->order() == e.group->order());
      CHECK(images_satisfy_relators(q));
      CHECK(abelianization_invariants(*q.group) == abelianization_invariants(*e.group));
      CHECK(derived_subgroup(*q.group).order() == derived_subgroup(*e.group).order());
      CHECK(center(*q.group).order() == center(*e.group).order());
      CHECK(lower_central_series(*q.group).size() == lower_central_series(*e.group).size());
    }
  }
}

TEST_CASE("successive quotients grow and map onto each other") {
  auto f = std::make_shared<const FpPresentation>(fp_from_pc(*build_phi10(3, "29")));
  auto q = class1_quotient(f, 3);
  std::uint64_t last = q.group->order();
  while (auto next = extend_one_class(q)) {
    CHECK(next->group->order() > last);
    CHECK(next->cls == q.cls + 1);
    // the previous class is the prefix of the new pc sequence
    const unsigned n = q.group->size();
    for (unsigned i = 0; i < f->gens.size(); ++i)
      CHECK(Exponents(next->images[i].begin(), next->images[i].begin() + n) == q.images[i]);
    std::vector<Exponents> proj;
    for (unsigned i = 0; i < next->group->size(); ++i) {
      Exponents e = next->group->generator(i);
      e.resize(n);
      proj.push_back(e);
    }
    CHECK(Homomorphism(next->group, q.group, proj).validate());
    CHECK(images_generate(*next));
    last = next->group->order();
    q = std::move(*next);
  }
  CHECK(last == 243);
}

TEST_CASE("fp presentations are validated") {
  auto f = std::make_shared<FpPresentation>();
  f->add_generator("x");
  f->relators = {{{1, 1}}};
  CHECK_THROWS_AS(class1_quotient(f, 3), std::invalid_argument);
  CHECK_THROWS_AS(p_quotient(two_generator({}), 3, 0), std::invalid_argument);
}
