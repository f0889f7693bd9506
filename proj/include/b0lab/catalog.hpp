// Built-in presentations of groups of order p^5 in the isoclinism families
// 1, 5, 6, 7 and 10, family counts, GAP id tables and the pcp text format.

#ifndef B0LAB_CATALOG_HPP
#define B0LAB_CATALOG_HPP

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "b0lab/pcgroup.hpp"

namespace b0lab {

struct NumberTheoryContext {
  unsigned p = 0;
  unsigned g = 0;      // smallest primitive root
  unsigned nu = 0;     // smallest quadratic non-residue
  unsigned alpha = 0;  // same as g

  explicit NumberTheoryContext(unsigned prime);
  unsigned inv(unsigned a) const;
  unsigned pow(unsigned a, unsigned e) const;
};

bool is_primitive_root(unsigned a, unsigned p);
unsigned smallest_primitive_root(unsigned p);
unsigned smallest_nonresidue(unsigned p);

struct FamilyId {
  unsigned family = 0;  // 1..10
  std::string variant;
  unsigned p = 0;
  std::string label() const;  // e.g. "phi6:221a"
};

PcGroup build_phi10(unsigned p, const std::string& variant);
PcGroup build_phi6(unsigned p, const std::string& variant);
PcGroup build_phi7(unsigned p, const std::string& variant);
PcGroup build_phi5(unsigned p, const std::string& variant);
/// parts sum to 5, e.g. {2, 2, 1}
PcGroup build_abelian(const std::vector<unsigned>& partition, unsigned p);

/// Variant labels accepted by the constructors for the given family and p.
std::vector<std::string> family_variants(unsigned family, unsigned p);

struct CatalogEntry {
  FamilyId id;
  PcGroup group;
  std::optional<unsigned> gap_id;
};

/// Every built-in group for p: families 1, 5, 6, 7 and 10.
std::vector<CatalogEntry> catalog(unsigned p);

/// Builds "phi10:28", "phi6:221d1", "phi1:2,2,1", "phi5:1^5", "small:heisenberg", ...
/// Throws std::invalid_argument for unknown labels.
CatalogEntry catalog_lookup(const std::string& spec, unsigned p);

struct FamilyCounts {
  std::array<unsigned, 10> per_family{};
  unsigned phi10 = 0;
  unsigned total = 0;
  unsigned bagnera = 0;  // 2p+61+gcd(4,p-1)+2gcd(3,p-1)
};
FamilyCounts family_counts(unsigned p);

struct GapIdTable {
  unsigned p = 0;
  std::vector<unsigned> phi10;
  std::vector<std::pair<std::string, unsigned>> phi10_variants;
  std::vector<std::pair<std::string, unsigned>> phi7_variants;  // p = 3 only
};
/// p in {3, 5, 7, 11}.
GapIdTable gap_id_map(unsigned p);

class PcpSyntaxError : public std::runtime_error {
 public:
  PcpSyntaxError(std::size_t line, std::size_t col, const std::string& msg);
  std::size_t line;
  std::size_t col;
};

class InconsistentPresentation : public std::runtime_error {
 public:
  explicit InconsistentPresentation(const std::string& msg) : std::runtime_error(msg) {}
};

/// Parses and checks consistency.
PcGroup parse_pcp(const std::string& text);
PcGroup load_pcp(const std::string& path);
/// Canonical text; parse_pcp(serialize_pcp(g)) reproduces g.
std::string serialize_pcp(const PcPresentation& g);

/// Small test groups: "heisenberg" (order p^3, exponent p), "metacyclic" (exponent p^2
/// order p^3), "elementary:k", "cyclic:k".
PcGroup build_small(const std::string& name, unsigned p);

}  // namespace b0lab

#endif  // B0LAB_CATALOG_HPP
