// Isoclinism tests, cheap invariant fingerprints and the per-family B0
// constancy table.

#ifndef B0LAB_ISOCLINISM_HPP
#define B0LAB_ISOCLINISM_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "b0lab/pcgroup.hpp"
#include "b0lab/report.hpp"
#include "b0lab/subgroup.hpp"

namespace b0lab {

/// Commutator map on G/Z(G) x G/Z(G) with values in G'.
struct CommutatorPairing {
  PcGroup group;
  QuotientResult central_quotient;
  Subgroup derived;
  std::uint64_t q_order = 0;
  std::vector<Exponents> table;  // [index(a) * q_order + index(b)], elements of G

  /// A preimage in G of a central quotient element.
  Exponents lift(const Exponents& a) const;
  const Exponents& at(const Exponents& a, const Exponents& b) const;
};

/// Throws GuardFailure if a value depends on the coset representative.
CommutatorPairing commutator_pairing(const PcGroup& g);

struct IsoclinismWitness {
  std::vector<Exponents> theta_domain;  // generators of G1/Z1
  std::vector<Exponents> theta_images;  // in G2/Z2
  std::vector<Exponents> phi_domain;    // generators of G1', as elements of G1
  std::vector<Exponents> phi_images;    // in G2
};

struct IsoclinismResult {
  bool isoclinic = false;
  std::optional<IsoclinismWitness> witness;
  std::uint64_t candidates_tried = 0;
};

/// Backtracking search; throws CapExceeded after `budget` theta candidates
/// (0: unlimited).
IsoclinismResult is_isoclinic(const PcGroup& g1, const PcGroup& g2, std::uint64_t budget = 0);

/// Checks a witness against both pairings: theta and phi are well-defined
/// isomorphisms and phi([a, b]) = [theta a, theta b] for all a, b.
bool validate_witness(const CommutatorPairing& a, const CommutatorPairing& b, const IsoclinismWitness& w);

struct Fingerprint {
  std::uint64_t center = 0;
  std::uint64_t derived = 0;
  std::uint64_t central_quotient = 0;
  std::vector<std::uint64_t> lower_central;  // |gamma_2|, |gamma_3|, ...
  std::uint64_t exponent = 0;
  std::vector<std::uint64_t> abelianization;
  std::map<std::uint64_t, std::uint64_t> class_sizes;  // size -> element count / |Z|

  /// Equality of the isoclinism invariants only.
  bool compatible(const Fingerprint& o) const;
  std::string to_string() const;
};

Fingerprint family_fingerprint(const PcPresentation& g);

/// Isoclinic to the Phi10 representative of the same prime (order p^5 only).
bool in_phi10(const PcGroup& g);

struct FamilyB0 {
  std::string family;
  std::vector<std::string> members;
  std::vector<std::vector<std::uint64_t>> invariants;
  bool constant = true;
};

/// One row per family key.
std::vector<FamilyB0> b0_constancy_report(const std::vector<std::pair<std::string, B0Report>>& keyed);

/// Groups the corpus into isoclinism classes; returns a class label per entry
/// ("iso1", "iso2", ... in order of first appearance).
std::vector<std::string> isoclinism_classes(const std::vector<PcGroup>& groups, std::uint64_t budget = 0);

}  // namespace b0lab

#endif  // B0LAB_ISOCLINISM_HPP
