// Lower exponent-p central series quotients of finitely presented groups.

#ifndef B0LAB_PQUOTIENT_HPP
#define B0LAB_PQUOTIENT_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "b0lab/pcgroup.hpp"

namespace b0lab {

/// Letters (generator, nonzero exponent); negative exponents are inverses.
using FpWord = std::vector<std::pair<unsigned, int>>;

struct FpPresentation {
  std::vector<std::string> gens;
  std::vector<FpWord> relators;

  unsigned add_generator(std::string name);
  /// Throws std::invalid_argument if a relator uses an undeclared generator.
  void validate() const;
};

FpWord fp_inverse(const FpWord& w);
FpWord fp_concat(std::initializer_list<FpWord> parts);
/// a^-1 b^-1 a b
FpWord fp_commutator(const FpWord& a, const FpWord& b);

/// The relations of a pc presentation as relators on its generators.
FpPresentation fp_from_pc(const PcPresentation& g);

struct Definition {
  enum class Kind { image, power, commutator };
  Kind kind;
  unsigned a;      // image: FP generator; power: i; commutator: j
  unsigned b = 0;  // commutator: i (j > i)
};

struct PcQuotient {
  std::shared_ptr<const FpPresentation> source;
  PcGroup group;
  unsigned cls = 0;
  std::vector<Exponents> images;  // one per FP generator
  std::vector<unsigned> weights;  // one per pc generator
  std::vector<Definition> definitions;
  bool stable = false;
};

PcQuotient class1_quotient(std::shared_ptr<const FpPresentation> f, unsigned p);
/// Next class, or nullopt when no tail survives.
std::optional<PcQuotient> extend_one_class(const PcQuotient& q);
/// Iterates until stable or max_class; result.stable tells which happened.
PcQuotient p_quotient(std::shared_ptr<const FpPresentation> f, unsigned p, unsigned max_class);

Exponents lift_word(const PcQuotient& q, const FpWord& w);

}  // namespace b0lab

#endif  // B0LAB_PQUOTIENT_HPP
