// Exterior square through the doubled-generator group tau(G), the Schur
// multiplier M(G) = ker(kappa), the commuting-wedge subgroup M0(G) and
// B0(G) = M(G)/M0(G).

#ifndef B0LAB_MULTIPLIER_HPP
#define B0LAB_MULTIPLIER_HPP

#include <optional>
#include <string>
#include <vector>

#include "b0lab/pcgroup.hpp"
#include "b0lab/pquotient.hpp"
#include "b0lab/report.hpp"
#include "b0lab/subgroup.hpp"

namespace b0lab {

/// Generators x_1..x_n (FP indices 0..n-1) and y_1..y_n (n..2n-1).
FpPresentation tau_presentation(const PcPresentation& g);

/// Nilpotency class of G (0 for the trivial group).
unsigned nilpotency_class(const PcPresentation& g);
/// Length of the lower exponent-p central series.
unsigned exponent_p_class(const PcPresentation& g);

struct ExteriorSquareData {
  PcGroup group;
  PcQuotient tau;
  Subgroup wedge;             // W = G^G inside tau
  PcGroup wedge_group;        // W on its canonical sequence
  Homomorphism kappa;         // wedge_group -> group
  Subgroup multiplier;        // ker kappa, inside wedge_group
  Homomorphism projection;    // tau -> group, x_i, y_i -> g_i

  Exponents lift_x(const Exponents& g) const;
  Exponents lift_y(const Exponents& g) const;
  /// Coordinates in wedge_group of an element of W.
  Exponents to_wedge(const Exponents& t) const;
};

/// class_cap 0 means 2*exponent_p_class(G)+2. Throws CapExceeded if tau does not
/// stabilize within the cap and GuardFailure if an order identity fails.
ExteriorSquareData exterior_square(const PcGroup& g, unsigned class_cap = 0);

std::vector<std::uint64_t> schur_multiplier(const PcGroup& g, unsigned class_cap = 0);

/// [x~, (y~)^phi] as an element of wedge_group. Throws std::invalid_argument
/// unless x and y commute.
Exponents commuting_wedge(const ExteriorSquareData& d, const Exponents& x, const Exponents& y);

struct TensorOptions {
  PairMode pairs = PairMode::full;
  unsigned class_cap = 0;
  std::uint64_t pair_cap = 0;  // 0: no cap
  bool parallel = true;
};

struct WedgeClosure {
  Subgroup m0;
  std::uint64_t pairs_visited = 0;
  bool complete = true;  // false when pair_cap stopped the enumeration
};

/// M0 from commuting pairs. Full mode visits every commuting pair; bicyclic
/// mode pairs each class representative x with generators of C(x).
WedgeClosure commuting_wedge_closure_serial(const ExteriorSquareData& d, PairMode mode, std::uint64_t pair_cap = 0);
WedgeClosure commuting_wedge_closure_parallel(const ExteriorSquareData& d, PairMode mode, std::uint64_t pair_cap = 0);

B0Report b0_tensor(const PcGroup& g, const TensorOptions& opt = {});

struct CorpusEntry {
  std::string label;
  PcGroup group;
  std::optional<bool> phi10;  // decided by isoclinism when absent
};

struct VerificationRow {
  std::string label;
  bool phi10 = false;
  B0Report report;
  bool agrees = false;
};

struct VerificationTable {
  unsigned p = 0;
  std::vector<VerificationRow> rows;
  std::vector<std::string> offenders;
  unsigned nonzero = 0;
  bool ok() const { return offenders.empty(); }
};

/// Every entry must have order p^5; B0 != 0 is expected exactly on Phi10.
VerificationTable verify_theorem(unsigned p, const std::vector<CorpusEntry>& corpus, const TensorOptions& opt = {});

}  // namespace b0lab

#endif  // B0LAB_MULTIPLIER_HPP
