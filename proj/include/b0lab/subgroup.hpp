// Subgroups given by canonical generating sequences, homomorphisms between
// pc presentations and the structural queries built on them.

#ifndef B0LAB_SUBGROUP_HPP
#define B0LAB_SUBGROUP_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "b0lab/pcgroup.hpp"

namespace b0lab {

/// Induced pc sequence with distinct leading depths, leading exponents 1,
/// fully reduced (each generator has exponent 0 at the other leading depths).
/// The parent presentation must outlive the subgroup.
class Subgroup {
 public:
  Subgroup() = default;
  explicit Subgroup(const PcPresentation& parent);
  static Subgroup whole(const PcPresentation& parent);

  const PcPresentation& parent() const { return *parent_; }
  const std::vector<Exponents>& generators() const { return gens_; }
  std::vector<unsigned> leading_depths() const;
  unsigned rank_of_sequence() const { return static_cast<unsigned>(gens_.size()); }
  std::uint64_t order() const;

  bool contains(const Exponents& x) const;
  /// Left sift x <- s^-e x; returns the residue (identity iff x is a member).
  Exponents sift(Exponents x) const;
  /// Representative of the right coset x S with zero exponent at every leading depth.
  Exponents coset_rep(Exponents x) const;

  /// Adds x and closes under powers and commutators. Returns false if x was
  /// already a member.
  bool add(const Exponents& x);

  /// Whole element list, p^k entries.
  std::vector<Exponents> elements() const;
  /// Exponents a with x = s_1^a_1 ... s_k^a_k; x must be a member.
  std::vector<unsigned> decompose(Exponents x) const;
  /// The subgroup as a standalone pc presentation on its canonical sequence;
  /// generator r maps to generators()[r].
  PcGroup as_presentation(std::string name = {}) const;

  bool is_abelian() const;
  bool is_normal() const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.gens_ == b.gens_; }

 private:
  bool insert_residue(Exponents r);
  void reduce();
  void refresh_powers(std::size_t r);

  const PcPresentation* parent_ = nullptr;
  std::vector<Exponents> gens_;          // sorted by leading depth
  std::vector<int> slot_;                // depth -> index into gens_, or -1
  std::vector<std::vector<Exponents>> inv_powers_;  // [r][e] = s_r^-e
};

Subgroup subgroup_closure(const PcPresentation& g, const std::vector<Exponents>& gens);
Subgroup normal_closure(const PcPresentation& g, const std::vector<Exponents>& gens);
/// Subgroup generated by the pc generators at the given depths and beyond.
Subgroup depth_subgroup(const PcPresentation& g, unsigned from);

Subgroup center(const PcPresentation& g);
Subgroup derived_subgroup(const PcPresentation& g);
/// [A, B] for subgroups of a common parent.
Subgroup commutator_subgroup(const Subgroup& a, const Subgroup& b);
/// Product AB for A normalizing B (or either normal).
Subgroup product(const Subgroup& a, const Subgroup& b);
Subgroup intersection(const Subgroup& a, const Subgroup& b);
/// S^(p^i): subgroup generated by p^i-th powers of all elements of abelian S.
Subgroup power_subgroup(const Subgroup& s, unsigned i);
/// Terms G = gamma_1 > gamma_2 > ... > 1.
std::vector<Subgroup> lower_central_series(const PcPresentation& g);

class Homomorphism {
 public:
  Homomorphism() = default;
  Homomorphism(PcGroup source, PcGroup target, std::vector<Exponents> images);

  const PcGroup& source() const { return source_; }
  const PcGroup& target() const { return target_; }
  const std::vector<Exponents>& images() const { return images_; }

  Exponents apply(const Exponents& x) const;
  Exponents apply_word(const Word& w) const;
  /// Every source relation maps to a relation holding in the target.
  bool validate() const;
  /// Generated by the images.
  bool is_surjective() const;

 private:
  PcGroup source_;
  PcGroup target_;
  std::vector<Exponents> images_;
};

struct QuotientResult {
  PcGroup group;
  Homomorphism projection;
  /// Depths of the parent kept as factor generators, in order.
  std::vector<unsigned> factor_depths;
};

/// Throws std::invalid_argument if N is not normal.
QuotientResult quotient(const PcGroup& g, const Subgroup& n);

/// G x H with the generators of G first.
PcGroup direct_product(const PcPresentation& g, const PcPresentation& h);

/// Kernel of a homomorphism, as a subgroup of the source.
Subgroup kernel(const Homomorphism& f);

/// Invariant factors of an abelian subgroup, ascending; throws if nonabelian.
std::vector<std::uint64_t> abelian_invariants(const Subgroup& s);
/// Invariants of S/T for T <= S normal with S/T abelian; throws if S/T is nonabelian.
std::vector<std::uint64_t> abelian_invariants(const Subgroup& s, const Subgroup& t);
std::vector<std::uint64_t> abelianization_invariants(const PcPresentation& g);

bool is_bicyclic(const Subgroup& s);

struct ConjugacyClass {
  Exponents rep;
  std::uint64_t size;
  /// Generators of the centralizer of rep.
  std::vector<Exponents> centralizer_gens;
};

/// All classes with centralizers; brute force orbits, for |G| up to ~10^7.
std::vector<ConjugacyClass> conjugacy_classes(const PcPresentation& g);

struct ClassOrbit {
  Exponents rep;
  std::vector<Exponents> members;
  std::vector<Exponents> conjugators;  // rep^conjugators[i] == members[i]
  Subgroup centralizer;                // of rep
};
std::vector<ClassOrbit> class_orbits(const PcPresentation& g);
Subgroup centralizer(const PcPresentation& g, const Exponents& x);

enum class PairMode { full, bicyclic };

/// Visits commuting ordered pairs. In bicyclic mode x runs over class
/// representatives and y over all of C_G(x).
void for_each_commuting_pair(const PcPresentation& g, PairMode mode,
                             const std::function<void(const Exponents&, const Exponents&)>& visit);

/// Bicyclic subgroups, deduplicated. In bicyclic mode only one pair per
/// conjugacy class of the first generator is closed, so the result covers
/// every subgroup up to conjugacy.
std::vector<Subgroup> enumerate_bicyclic_subgroups(const PcPresentation& g,
                                                   PairMode mode = PairMode::full);

}  // namespace b0lab

#endif  // B0LAB_SUBGROUP_HPP
