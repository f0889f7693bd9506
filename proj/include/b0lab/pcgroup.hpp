// Power-commutator presentations of finite p-groups and collection.
//
// A presentation has generators g_0..g_{n-1} (0-based internally), every
// relative order equal to p, power relations g_i^p = w_i with w_i a normal
// word in generators > i, and commutator relations [g_j, g_i] = w_ji (j > i)
// with w_ji a normal word in generators > j. Commutators follow the
// convention [a, b] = a^-1 b^-1 a b.

#ifndef B0LAB_PCGROUP_HPP
#define B0LAB_PCGROUP_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace b0lab {

using Exp = std::uint8_t;
using Exponents = std::vector<Exp>;

struct Letter {
  std::uint32_t gen;
  std::uint32_t exp;
  friend bool operator==(const Letter&, const Letter&) = default;
};
using Word = std::vector<Letter>;

/// Raw relation data; validated when a PcPresentation is built from it.
struct PcRelations {
  unsigned p = 0;
  unsigned n = 0;
  std::vector<Word> powers;                              // size n
  std::map<std::pair<unsigned, unsigned>, Word> comms;   // key (j, i), j > i
  std::string name;
  std::vector<std::string> gen_names;                    // optional, size n
  std::vector<unsigned> weights;                         // optional, size n

  PcRelations() = default;
  PcRelations(unsigned prime, unsigned gens) : p(prime), n(gens), powers(gens) {}
};

struct ConsistencyFailure {
  std::string overlap;
  Exponents lhs;
  Exponents rhs;
};

class PcPresentation {
 public:
  explicit PcPresentation(PcRelations rel);

  unsigned prime() const { return rel_.p; }
  unsigned size() const { return rel_.n; }
  const std::string& name() const { return rel_.name; }
  const PcRelations& relations() const { return rel_; }
  std::string gen_name(unsigned i) const;

  const Word& power_tail(unsigned i) const { return rel_.powers[i]; }
  const Word& comm_tail(unsigned j, unsigned i) const;

  Exponents identity() const { return Exponents(rel_.n, 0); }
  Exponents generator(unsigned i) const;
  bool is_identity(const Exponents& e) const;

  /// e <- e * w, result in normal form.
  void collect(Exponents& e, std::span<const Letter> w) const;
  Exponents collect_word(std::span<const Letter> w) const;

  Exponents multiply(const Exponents& a, const Exponents& b) const;
  Exponents inverse(const Exponents& a) const;
  Exponents power(const Exponents& a, long long k) const;
  Exponents commutator(const Exponents& a, const Exponents& b) const;
  /// g^-1 a g
  Exponents conjugate(const Exponents& a, const Exponents& g) const;
  Word to_word(const Exponents& e) const;

  std::uint64_t order_of(const Exponents& a) const;
  /// |G| = p^n; throws if it does not fit in 64 bits.
  std::uint64_t order() const;

  /// Lexicographic index in [0, p^n).
  std::uint64_t index_of(const Exponents& e) const;
  Exponents from_index(std::uint64_t idx) const;

  /// Empty result means consistent.
  std::vector<ConsistencyFailure> consistency_failures(bool stop_at_first = false) const;
  bool is_consistent() const { return consistency_failures(true).empty(); }

  /// Index of the first generator of the trailing central block whose
  /// members are central with trivial p-th power (n if there is none).
  unsigned central_from() const { return central_from_; }

 private:
  struct Frame {
    const Letter* w;
    std::uint32_t len;
    std::uint32_t pos;
    std::uint32_t reps;
  };
  void mul_gen(Exponents& e, unsigned k, unsigned a, std::vector<Frame>& stack) const;

  PcRelations rel_;
  std::vector<Word> comm_table_;              // n*n, entry [j*n+i] for j > i
  std::vector<Word> conj_;                    // g_j^{g_i} = g_j [g_j, g_i], [j*n+i]
  std::vector<std::vector<unsigned>> noncomm_;  // j > k with [g_j, g_k] != 1
  std::vector<Letter> single_letters_;        // (k, a) at k*p + a
  unsigned central_from_ = 0;
};

using PcGroup = std::shared_ptr<const PcPresentation>;

inline PcGroup make_group(PcRelations rel) {
  return std::make_shared<const PcPresentation>(std::move(rel));
}

/// Element with a reference to its parent presentation. The parent must
/// outlive the element.
class Element {
 public:
  Element() = default;
  Element(const PcPresentation& parent, Exponents e) : parent_(&parent), e_(std::move(e)) {}
  static Element identity(const PcPresentation& g) { return {g, g.identity()}; }
  static Element generator(const PcPresentation& g, unsigned i) { return {g, g.generator(i)}; }

  const PcPresentation& parent() const { return *parent_; }
  const Exponents& exponents() const { return e_; }
  bool is_identity() const { return parent_->is_identity(e_); }

  friend bool operator==(const Element& a, const Element& b) {
    return a.parent_ == b.parent_ && a.e_ == b.e_;
  }
  friend bool operator<(const Element& a, const Element& b) { return a.e_ < b.e_; }

 private:
  const PcPresentation* parent_ = nullptr;
  Exponents e_;
};

Element multiply(const Element& a, const Element& b);
Element inverse(const Element& a);
Element power(const Element& a, long long k);
Element commutator(const Element& a, const Element& b);
std::uint64_t order_of(const Element& a);
Element operator*(const Element& a, const Element& b);

/// Maximum element order; for p-groups this is the exponent.
std::uint64_t group_exponent(const PcPresentation& g);

/// Human-readable normal word, e.g. "f1^2*f3".
std::string format_element(const PcPresentation& g, const Exponents& e);

}  // namespace b0lab

#endif  // B0LAB_PCGROUP_HPP
