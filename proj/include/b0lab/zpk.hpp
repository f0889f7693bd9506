// Linear algebra over Z/p^k: Howell forms of row spans, kernels and
// invariants of finite quotient modules.

#ifndef B0LAB_ZPK_HPP
#define B0LAB_ZPK_HPP

#include <cstdint>
#include <functional>
#include <vector>

namespace b0lab::zpk {

using Vec = std::vector<std::uint32_t>;

struct Ring {
  unsigned p = 0;
  unsigned k = 0;
  std::uint32_t q = 1;  // p^k

  Ring() = default;
  Ring(unsigned prime, unsigned exponent);
  /// Ring Z/m for m a power of p.
  static Ring for_modulus(unsigned p, std::uint64_t m);

  unsigned val(std::uint32_t a) const;  // k for a = 0
  std::uint32_t pow_p(unsigned t) const;
  std::uint32_t unit_inverse(std::uint32_t u) const;
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return (a + b) % q; }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return (a + q - b) % q; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % q);
  }
  std::uint32_t reduce(long long a) const;
  /// y <- y + c x
  void axpy(Vec& y, std::uint32_t c, const Vec& x) const;
  bool is_zero(const Vec& v) const;
};

/// Row span in Howell form: pivots in increasing columns, pivot entries p^t,
/// entries above pivots reduced, closed under annihilator rows, so that
/// reduction gives a canonical representative modulo the span.
class Howell {
 public:
  Howell(Ring r, std::size_t m) : ring_(r), m_(m) {}
  Howell(Ring r, std::size_t m, std::vector<Vec> gens);

  const Ring& ring() const { return ring_; }
  std::size_t columns() const { return m_; }
  const std::vector<Vec>& rows() const { return rows_; }

  /// Canonical representative of v modulo the span.
  Vec reduce(Vec v) const;
  bool contains(const Vec& v) const;
  /// log_p of the number of elements in the span.
  unsigned log_order() const;

 private:
  Ring ring_;
  std::size_t m_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivot_col_;
  std::vector<unsigned> pivot_val_;
};

/// Generators of {x : a.x = 0 for every row a}. Rows are pulled from `next`
/// until it returns false.
std::vector<Vec> kernel(const Ring& r, std::size_t m, const std::function<bool(Vec&)>& next);

/// Incremental form of kernel(): feed rows one at a time.
class KernelBuilder {
 public:
  KernelBuilder(Ring r, std::size_t m);
  /// Returns true if the kernel shrank.
  bool add_row(const Vec& a);
  /// Current generators (compressed).
  std::vector<Vec> generators();

 private:
  void compress();
  Ring ring_;
  std::size_t m_;
  std::vector<Vec> cols_;  // generators of the current kernel
  std::size_t since_compress_ = 0;
};

/// Invariants (ascending prime powers) of span(sub_gens + quotient_gens) / span(quotient_gens).
std::vector<std::uint64_t> quotient_invariants(const Ring& r, std::size_t m, const std::vector<Vec>& sub_gens,
                                               const std::vector<Vec>& quotient_gens);

}  // namespace b0lab::zpk

#endif  // B0LAB_ZPK_HPP
