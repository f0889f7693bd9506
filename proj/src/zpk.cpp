#include "b0lab/zpk.hpp"

#include <algorithm>
#include <stdexcept>

namespace b0lab::zpk {

Ring::Ring(unsigned prime, unsigned exponent) : p(prime), k(exponent) {
  std::uint64_t v = 1;
  for (unsigned i = 0; i < k; ++i) v *= p;
  if (v > (1u << 20)) throw std::invalid_argument("zpk: modulus too large");
  q = static_cast<std::uint32_t>(v);
}

Ring Ring::for_modulus(unsigned p, std::uint64_t m) {
  unsigned k = 0;
  while (m > 1) {
    if (m % p) throw std::invalid_argument("zpk: modulus is not a power of p");
    m /= p;
    ++k;
  }
  return Ring(p, k);
}

unsigned Ring::val(std::uint32_t a) const {
  a %= q;
  if (a == 0) return k;
  unsigned t = 0;
  while (a % p == 0) {
    a /= p;
    ++t;
  }
  return t;
}

std::uint32_t Ring::pow_p(unsigned t) const {
  std::uint64_t v = 1;
  for (unsigned i = 0; i < t; ++i) v *= p;
  return static_cast<std::uint32_t>(v % q);
}

std::uint32_t Ring::unit_inverse(std::uint32_t u) const {
  // extended Euclid on (u, q)
  long long a = u % q, b = q, x0 = 1, x1 = 0;
  while (b) {
    long long t = a / b;
    a -= t * b;
    std::swap(a, b);
    x0 -= t * x1;
    std::swap(x0, x1);
  }
  if (a != 1) throw std::invalid_argument("zpk: not a unit");
  return reduce(x0);
}

std::uint32_t Ring::reduce(long long a) const {
  long long r = a % static_cast<long long>(q);
  return static_cast<std::uint32_t>(r < 0 ? r + q : r);
}

void Ring::axpy(Vec& y, std::uint32_t c, const Vec& x) const {
  if (c % q == 0) return;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (x[i]) y[i] = static_cast<std::uint32_t>((y[i] + static_cast<std::uint64_t>(c) * x[i]) % q);
}

bool Ring::is_zero(const Vec& v) const {
  return std::all_of(v.begin(), v.end(), [](std::uint32_t a) { return a == 0; });
}

Howell::Howell(Ring r, std::size_t m, std::vector<Vec> gens) : ring_(r), m_(m) {
  std::vector<Vec> pending;
  for (auto& g : gens) {
    if (g.size() != m) throw std::invalid_argument("Howell: row length mismatch");
    for (auto& x : g) x %= ring_.q;
    if (!ring_.is_zero(g)) pending.push_back(std::move(g));
  }
  for (std::size_t c = 0; c < m_ && !pending.empty(); ++c) {
    std::size_t best = pending.size();
    unsigned best_val = ring_.k;
    for (std::size_t i = 0; i < pending.size(); ++i) {
      const unsigned v = ring_.val(pending[i][c]);
      if (v < best_val) {
        best_val = v;
        best = i;
      }
    }
    if (best == pending.size()) continue;
    Vec row = std::move(pending[best]);
    pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(best));
    const std::uint32_t pt = ring_.pow_p(best_val);
    const std::uint32_t unit = row[c] / pt;
    const std::uint32_t inv = ring_.unit_inverse(unit);
    for (auto& x : row) x = ring_.mul(x, inv);
    for (auto& other : pending)
      if (other[c]) ring_.axpy(other, ring_.q - other[c] / pt, row);
    for (auto& prev : rows_)
      if (prev[c] >= pt) ring_.axpy(prev, ring_.q - prev[c] / pt, row);
    if (best_val > 0) {
      Vec ann = row;
      const std::uint32_t s = ring_.pow_p(ring_.k - best_val);
      for (auto& x : ann) x = ring_.mul(x, s);
      if (!ring_.is_zero(ann)) pending.push_back(std::move(ann));
    }
    rows_.push_back(std::move(row));
    pivot_col_.push_back(c);
    pivot_val_.push_back(best_val);
    pending.erase(std::remove_if(pending.begin(), pending.end(), [&](const Vec& v) { return ring_.is_zero(v); }),
                  pending.end());
  }
}

Vec Howell::reduce(Vec v) const {
  for (auto& x : v) x %= ring_.q;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const std::uint32_t pt = ring_.pow_p(pivot_val_[i]);
    const std::uint32_t coef = v[pivot_col_[i]] / pt;
    if (coef) ring_.axpy(v, ring_.q - coef, rows_[i]);
  }
  return v;
}

bool Howell::contains(const Vec& v) const { return ring_.is_zero(reduce(v)); }

unsigned Howell::log_order() const {
  unsigned s = 0;
  for (unsigned t : pivot_val_) s += ring_.k - t;
  return s;
}

KernelBuilder::KernelBuilder(Ring r, std::size_t m) : ring_(r), m_(m) {
  for (std::size_t i = 0; i < m; ++i) {
    Vec e(m, 0);
    e[i] = 1 % ring_.q;
    cols_.push_back(std::move(e));
  }
}

bool KernelBuilder::add_row(const Vec& a) {
  std::vector<std::uint32_t> v(cols_.size());
  std::size_t best = cols_.size();
  unsigned best_val = ring_.k;
  for (std::size_t j = 0; j < cols_.size(); ++j) {
    std::uint64_t s = 0;
    const Vec& c = cols_[j];
    for (std::size_t i = 0; i < m_; ++i)
      if (a[i] && c[i]) s = (s + static_cast<std::uint64_t>(a[i]) * c[i]) % ring_.q;
    v[j] = static_cast<std::uint32_t>(s);
    const unsigned t = ring_.val(v[j]);
    if (t < best_val) {
      best_val = t;
      best = j;
    }
  }
  if (best == cols_.size()) return false;
  const std::uint32_t pt = ring_.pow_p(best_val);
  const std::uint32_t inv = ring_.unit_inverse(v[best] / pt);
  for (std::size_t j = 0; j < cols_.size(); ++j) {
    if (j == best || !v[j]) continue;
    const std::uint32_t coef = ring_.mul(v[j] / pt, inv);
    ring_.axpy(cols_[j], ring_.q - coef, cols_[best]);
  }
  const std::uint32_t s = ring_.pow_p(ring_.k - best_val);
  for (auto& x : cols_[best]) x = ring_.mul(x, s);
  cols_.erase(std::remove_if(cols_.begin(), cols_.end(), [&](const Vec& c) { return ring_.is_zero(c); }),
              cols_.end());
  if (++since_compress_ >= 32) compress();
  return true;
}

void KernelBuilder::compress() {
  since_compress_ = 0;
  Howell h(ring_, m_, cols_);
  if (h.rows().size() < cols_.size()) cols_ = h.rows();
}

std::vector<Vec> KernelBuilder::generators() {
  compress();
  return cols_;
}

std::vector<Vec> kernel(const Ring& r, std::size_t m, const std::function<bool(Vec&)>& next) {
  KernelBuilder kb(r, m);
  Vec row;
  while (next(row)) kb.add_row(row);
  return kb.generators();
}

std::vector<std::uint64_t> quotient_invariants(const Ring& r, std::size_t m, const std::vector<Vec>& sub_gens,
                                               const std::vector<Vec>& quotient_gens) {
  const unsigned base = Howell(r, m, quotient_gens).log_order();
  // ranks[i] = log_p |p^i Q|
  std::vector<long long> ranks(r.k + 2, 0);
  for (unsigned i = 0; i <= r.k; ++i) {
    std::vector<Vec> gens = quotient_gens;
    const std::uint32_t s = r.pow_p(i);
    for (const auto& g : sub_gens) {
      Vec x = g;
      for (auto& e : x) e = r.mul(e, s);
      gens.push_back(std::move(x));
    }
    ranks[i] = static_cast<long long>(Howell(r, m, gens).log_order()) - base;
  }
  std::vector<std::uint64_t> out;
  std::uint64_t q = 1;
  for (unsigned j = 1; j <= r.k; ++j) {
    q *= r.p;
    const long long mult = (ranks[j - 1] - ranks[j]) - (ranks[j] - ranks[j + 1]);
    for (long long c = 0; c < mult; ++c) out.push_back(q);
  }
  return out;
}

}  // namespace b0lab::zpk
