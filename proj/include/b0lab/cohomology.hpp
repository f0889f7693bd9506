// Brute-force cohomology with coefficients Q/Z (modelled as p-power
// torsion) and the certificates built on it: transgression cokernels,
// H^1 of cyclic groups, the fundamental-class cup product and the
// lambda map of the seven-term sequence.

#ifndef B0LAB_COHOMOLOGY_HPP
#define B0LAB_COHOMOLOGY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "b0lab/pcgroup.hpp"
#include "b0lab/report.hpp"
#include "b0lab/subgroup.hpp"
#include "b0lab/zpk.hpp"

namespace b0lab {

/// a / p^e in Q/Z; canonical with p not dividing a unless a = e = 0.
class QZValue {
 public:
  QZValue() = default;
  QZValue(unsigned p, std::uint64_t a, unsigned e);
  /// The element a/m of Q/Z for m a power of p.
  static QZValue from_fraction(unsigned p, long long a, std::uint64_t m);

  unsigned prime() const { return p_; }
  std::uint64_t numerator() const { return a_; }
  unsigned exponent() const { return e_; }
  bool is_zero() const { return a_ == 0; }
  /// Numerator over p^e for e >= exponent().
  std::uint64_t scaled(unsigned e) const;

  friend QZValue operator+(const QZValue& x, const QZValue& y);
  friend QZValue operator-(const QZValue& x);
  friend QZValue operator-(const QZValue& x, const QZValue& y) { return x + (-y); }
  friend QZValue operator*(long long c, const QZValue& x);
  friend bool operator==(const QZValue& x, const QZValue& y) {
    return x.a_ == y.a_ && (x.a_ == 0 || (x.p_ == y.p_ && x.e_ == y.e_));
  }
  std::string to_string() const;

 private:
  void normalize();
  unsigned p_ = 2;
  std::uint64_t a_ = 0;
  unsigned e_ = 0;
};

/// Homomorphism from a subgroup (or the whole group) to Q/Z, given on the
/// canonical generators of the domain.
struct Character {
  Subgroup domain;
  std::vector<QZValue> values;

  QZValue operator()(const Exponents& x) const;
  bool is_zero() const;
};

/// (g.chi)(x) = chi(g^-1 x g) for N normal.
Character act(const PcPresentation& g, const Exponents& elt, const Character& chi);

struct H2Structure {
  PcGroup group;
  std::uint64_t modulus = 1;  // n = |G|
  std::vector<std::uint64_t> invariants;
  /// Normalized cocycle tables f[index(g) * |G| + index(h)] in Z/n, one per
  /// invariant; together they generate H^2(G, Q/Z).
  std::vector<std::vector<std::uint32_t>> classes;
  std::vector<std::uint64_t> class_orders;
  std::uint64_t order() const;
};

/// Default oracle size cap: 81 for p = 3, 125 for p = 5, p^2 otherwise.
std::uint64_t default_oracle_cap(unsigned p);

/// H^2(G, Q/Z) from normalized bar cochains with values in Z/|G|. Throws
/// CapExceeded if |G| > size_cap (0: default cap).
H2Structure h2_qz(const PcGroup& g, std::uint64_t size_cap = 0);

/// Pointwise 2-cocycle identity for a table over Z/n.
bool is_2cocycle(const PcPresentation& g, std::uint64_t n, const std::vector<std::uint32_t>& f);

/// B0 as the classes of H^2 that restrict to zero on every bicyclic subgroup.
B0Report b0_oracle(const PcGroup& g, std::uint64_t size_cap = 0, PairMode mode = PairMode::full);

/// Generators of Hom(N, Q/Z)^G with their orders. Throws std::invalid_argument
/// unless N is normal.
std::vector<Character> h1_invariants(const Subgroup& n, const PcPresentation& g);
/// Generators of Hom(N, Q/Z).
std::vector<Character> h1_all(const Subgroup& n);
/// Order of the group generated by the given characters of one domain.
std::uint64_t character_span_order(const std::vector<Character>& chars);

struct TransgressionCertificate {
  std::uint64_t h1_fixed = 1;      // |H^1(N)^G|
  std::uint64_t res_image = 1;     // |im(H^1(G) -> H^1(N)^G)|
  std::uint64_t tr_image = 1;      // |im tr|
  std::uint64_t h2_quotient = 1;   // |H^2(G/N)|
  std::string h2_method;           // "oracle" or "tensor"
  std::uint64_t cokernel() const { return h2_quotient / tr_image; }
  std::string to_string() const;
};

/// Orders read off the five-term sequence. H^2(G/N) comes from the oracle when
/// G/N is within size_cap, otherwise from the exterior square.
TransgressionCertificate transgression_cokernel(const PcGroup& g, const Subgroup& n, std::uint64_t size_cap = 0);

struct CriterionResult {
  bool holds = false;
  std::vector<std::string> transcript;
};

/// True iff tr is not surjective and AN/N is cyclic for every bicyclic A.
CriterionResult lemma21_check(const PcGroup& g, const Subgroup& n, PairMode mode = PairMode::full,
                              std::uint64_t size_cap = 0);

/// Conditions on f1..f5 (default: the pc generators) followed by lemma21_check
/// with N = <f4, f5>. Throws std::invalid_argument for p = 2 or a wrong count.
CriterionResult lemma22_check(const PcGroup& g, std::vector<Exponents> f = {}, PairMode mode = PairMode::full);

/// Finite module M <= (Z/q)^r given by generators, with a C_n action matrix
/// on the ambient space (acting on column vectors).
struct CyclicModule {
  zpk::Ring ring;
  std::size_t rank = 0;
  std::vector<zpk::Vec> gens;
  std::vector<std::vector<std::uint32_t>> action;  // rank x rank
  unsigned n = 0;

  zpk::Vec apply(const zpk::Vec& x) const;
};

struct CyclicH1 {
  std::vector<std::uint64_t> invariants;
  /// Representatives x in Ker(Norm) of a generating set of the quotient.
  std::vector<zpk::Vec> reps;
  /// beta_x(sigma^i) = x + sigma x + ... + sigma^(i-1) x, i = 0..n-1.
  std::vector<std::vector<zpk::Vec>> cocycles;
  /// Every element of the quotient as a representative in Ker(Norm).
  std::vector<zpk::Vec> elements;
};

/// Ker(Norm)/Im(sigma - 1). Throws std::invalid_argument if sigma^n != 1 on M.
CyclicH1 cyclic_h1(const CyclicModule& m);
std::vector<zpk::Vec> beta_cocycle(const CyclicModule& m, const zpk::Vec& x);

/// Table over (C_p)^3 indexed [i][j][l] by exponents of sigma.
using Cocycle3 = std::vector<std::vector<std::vector<QZValue>>>;

/// gamma(s^i, s^j, s^l) = 0 if i + j <= p - 1, else beta(s^l), for Q/Z with
/// trivial action.
Cocycle3 cup_fundamental(const std::vector<QZValue>& beta);

/// 3-cocycle identity for trivial coefficients on C_p.
bool is_3cocycle(const Cocycle3& c);

/// A 1-cocycle G/N -> Hom(N, Q/Z), G/N = <u N> cyclic of order p, given as the
/// characters gamma(u^i N), i = 0..p-1.
struct CyclicCocycle {
  Exponents u;
  std::vector<Character> values;
};

/// c(t1, t2, t3) = (u(t1 t2) . gamma(t3))(eps(t1, t2)) with u(uN^i) = u^i.
Cocycle3 lambda_map(const PcPresentation& g, const Subgroup& n, const CyclicCocycle& gamma);
/// eps(u^i, u^j) = u^i u^j u^-(i+j mod p), an element of N.
Exponents section_cocycle(const PcPresentation& g, const Exponents& u, unsigned i, unsigned j);

/// Certifies B0(G) = 0 via injectivity of lambda (G/N cyclic of order p,
/// |N| <= p^4). `u` defaults to the first pc generator outside N.
CriterionResult thm56_certificate(const PcGroup& g, const Subgroup& n, std::optional<Exponents> u = std::nullopt);

/// The G-module Hom(N, Q/Z) under conjugation by u, as a CyclicModule over Z/|N|.
CyclicModule character_module(const PcPresentation& g, const Subgroup& n, const Exponents& u, unsigned order);
Character character_from_vector(const Subgroup& n, const zpk::Ring& ring, const zpk::Vec& v);

/// Maximal subgroups of G, one per hyperplane of the Frattini quotient.
std::vector<Subgroup> maximal_subgroups(const PcPresentation& g);

/// Order p^5, p odd: status "nonzero" when the nonvanishing criterion holds on
/// the pc generators, "zero" when some maximal subgroup carries an injectivity
/// certificate, "inconclusive" otherwise.
B0Report b0_criteria(const PcGroup& g, PairMode mode = PairMode::bicyclic);

}  // namespace b0lab

#endif  // B0LAB_COHOMOLOGY_HPP
