// Seeded generators for the property suites.

#ifndef B0LAB_GENERATORS_HPP
#define B0LAB_GENERATORS_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "b0lab/catalog.hpp"
#include "b0lab/subgroup.hpp"

namespace b0lab::test {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng_); }
  bool coin() { return below(2) == 1; }

  Exponents element(const PcPresentation& g) { return g.from_index(below(g.order())); }
  Exponents element(const Subgroup& s) {
    Exponents x = s.parent().identity();
    for (const auto& h : s.generators()) x = s.parent().multiply(x, s.parent().power(h, static_cast<long long>(below(s.parent().prime()))));
    return x;
  }

  /// An element of C_G(x), by rejection.
  Exponents commuting_with(const PcPresentation& g, const Exponents& x) {
    while (true) {
      auto y = element(g);
      if (g.multiply(x, y) == g.multiply(y, x)) return y;
    }
  }

  /// Subgroup generated by up to `k` random elements.
  Subgroup subgroup(const PcPresentation& g, unsigned k) {
    std::vector<Exponents> gens;
    for (unsigned i = 0, m = 1 + static_cast<unsigned>(below(k)); i < m; ++i) gens.push_back(element(g));
    return subgroup_closure(g, gens);
  }

  /// Quotient of a random catalog group by the normal closure of a random
  /// element, or a random subgroup of it.
  PcGroup group(unsigned p) {
    const auto cat = catalog(p);
    const auto& g = cat[below(cat.size())].group;
    if (coin()) return quotient(g, normal_closure(*g, {element(*g)})).group;
    return subgroup(*g, 3).as_presentation();
  }

  /// Random table over Z/n on |G| points.
  std::vector<std::uint32_t> cochain(std::size_t size, std::uint64_t n) {
    std::vector<std::uint32_t> f(size);
    for (auto& v : f) v = static_cast<std::uint32_t>(below(n));
    return f;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace b0lab::test

#endif  // B0LAB_GENERATORS_HPP
