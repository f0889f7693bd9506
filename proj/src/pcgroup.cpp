#include "b0lab/pcgroup.hpp"

#include <algorithm>
#include <sstream>

namespace b0lab {

namespace {

void validate_word(const Word& w, unsigned p, unsigned n, unsigned min_gen, const std::string& what) {
  long long last = -1;
  for (const Letter& l : w) {
    if (l.gen >= n) throw std::invalid_argument(what + ": generator index out of range");
    if (l.gen < min_gen) throw std::invalid_argument(what + ": tail must use higher generators only");
    if (static_cast<long long>(l.gen) <= last)
      throw std::invalid_argument(what + ": generators must be strictly increasing");
    if (l.exp == 0 || l.exp >= p) throw std::invalid_argument(what + ": exponent outside [1, p)");
    last = l.gen;
  }
}

bool is_prime(unsigned p) {
  if (p < 2) return false;
  for (unsigned d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

PcPresentation::PcPresentation(PcRelations rel) : rel_(std::move(rel)) {
  const unsigned p = rel_.p;
  const unsigned n = rel_.n;
  if (!is_prime(p) || p > 251) throw std::invalid_argument("presentation: p must be a prime below 256");
  if (rel_.powers.size() != n) throw std::invalid_argument("presentation: power table has wrong size");
  if (!rel_.gen_names.empty() && rel_.gen_names.size() != n)
    throw std::invalid_argument("presentation: generator name table has wrong size");
  if (!rel_.weights.empty() && rel_.weights.size() != n)
    throw std::invalid_argument("presentation: weight table has wrong size");
  for (unsigned i = 0; i < n; ++i) validate_word(rel_.powers[i], p, n, i + 1, "power relation");

  comm_table_.assign(static_cast<std::size_t>(n) * n, {});
  for (auto it = rel_.comms.begin(); it != rel_.comms.end();) {
    auto [j, i] = it->first;
    if (j >= n || i >= j) throw std::invalid_argument("commutator relation: need j > i within range");
    validate_word(it->second, p, n, j + 1, "commutator relation");
    if (it->second.empty()) {
      it = rel_.comms.erase(it);
      continue;
    }
    comm_table_[static_cast<std::size_t>(j) * n + i] = it->second;
    ++it;
  }

  conj_.assign(static_cast<std::size_t>(n) * n, {});
  noncomm_.assign(n, {});
  for (unsigned j = 0; j < n; ++j)
    for (unsigned i = 0; i < j; ++i) {
      Word w{{j, 1}};
      const Word& c = comm_table_[static_cast<std::size_t>(j) * n + i];
      w.insert(w.end(), c.begin(), c.end());
      conj_[static_cast<std::size_t>(j) * n + i] = std::move(w);
      if (!c.empty()) noncomm_[i].push_back(j);
    }

  single_letters_.resize(static_cast<std::size_t>(n) * p);
  for (unsigned k = 0; k < n; ++k)
    for (unsigned a = 0; a < p; ++a) single_letters_[static_cast<std::size_t>(k) * p + a] = {k, a};

  // Trailing block of central generators with trivial power.
  central_from_ = n;
  for (unsigned k = n; k-- > 0;) {
    bool central = rel_.powers[k].empty();
    for (unsigned j = 0; central && j < n; ++j) {
      if (j == k) continue;
      const auto& c = j > k ? comm_table_[static_cast<std::size_t>(j) * n + k]
                            : comm_table_[static_cast<std::size_t>(k) * n + j];
      if (!c.empty()) central = false;
    }
    if (!central) break;
    central_from_ = k;
  }
}

std::string PcPresentation::gen_name(unsigned i) const {
  if (!rel_.gen_names.empty()) return rel_.gen_names[i];
  return "g" + std::to_string(i + 1);
}

const Word& PcPresentation::comm_tail(unsigned j, unsigned i) const {
  return comm_table_[static_cast<std::size_t>(j) * rel_.n + i];
}

Exponents PcPresentation::generator(unsigned i) const {
  Exponents e(rel_.n, 0);
  e.at(i) = 1;
  return e;
}

bool PcPresentation::is_identity(const Exponents& e) const {
  return std::all_of(e.begin(), e.end(), [](Exp x) { return x == 0; });
}

void PcPresentation::mul_gen(Exponents& e, unsigned k, unsigned a, std::vector<Frame>& stack) const {
  const unsigned p = rel_.p;
  if (k >= central_from_) {
    e[k] = static_cast<Exp>((e[k] + a) % p);
    return;
  }
  bool commutes = true;
  for (unsigned j : noncomm_[k]) {
    if (j >= central_from_) break;
    if (e[j] != 0) {
      commutes = false;
      break;
    }
  }
  if (commutes) {
    unsigned s = e[k] + a;
    if (s >= p) {
      e[k] = static_cast<Exp>(s - p);
      const Word& pw = rel_.powers[k];
      if (!pw.empty()) stack.push_back({pw.data(), static_cast<std::uint32_t>(pw.size()), 0, 1});
    } else {
      e[k] = static_cast<Exp>(s);
    }
    return;
  }

  // Move one copy of g_k through the suffix: w g_k = prefix g_k^(e_k+1) suffix^(g_k).
  if (a > 1) stack.push_back({&single_letters_[static_cast<std::size_t>(k) * p + (a - 1)], 1, 0, 1});
  const unsigned n = rel_.n;
  for (unsigned j = central_from_; j-- > k + 1;) {
    if (e[j] == 0) continue;
    const Word& cw = conj_[static_cast<std::size_t>(j) * n + k];
    stack.push_back({cw.data(), static_cast<std::uint32_t>(cw.size()), 0, e[j]});
    e[j] = 0;
  }
  unsigned s = e[k] + 1u;
  if (s == p) {
    e[k] = 0;
    const Word& pw = rel_.powers[k];
    if (!pw.empty()) stack.push_back({pw.data(), static_cast<std::uint32_t>(pw.size()), 0, 1});
  } else {
    e[k] = static_cast<Exp>(s);
  }
}

void PcPresentation::collect(Exponents& e, std::span<const Letter> w) const {
  if (w.empty()) return;
  std::vector<Frame> stack;
  stack.reserve(32);
  stack.push_back({w.data(), static_cast<std::uint32_t>(w.size()), 0, 1});
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.pos == f.len) {
      if (--f.reps == 0)
        stack.pop_back();
      else
        f.pos = 0;
      continue;
    }
    const Letter l = f.w[f.pos++];
    if (l.exp % rel_.p == 0) continue;
    mul_gen(e, l.gen, l.exp % rel_.p, stack);
  }
}

Exponents PcPresentation::collect_word(std::span<const Letter> w) const {
  Exponents e = identity();
  collect(e, w);
  return e;
}

Word PcPresentation::to_word(const Exponents& e) const {
  Word w;
  for (unsigned i = 0; i < e.size(); ++i)
    if (e[i]) w.push_back({i, e[i]});
  return w;
}

Exponents PcPresentation::multiply(const Exponents& a, const Exponents& b) const {
  Exponents e = a;
  const Word w = to_word(b);
  collect(e, w);
  return e;
}

Exponents PcPresentation::inverse(const Exponents& a) const {
  Exponents r = a;
  Exponents x = identity();
  for (unsigned i = 0; i < rel_.n; ++i) {
    if (r[i] == 0) continue;
    const Letter l{i, rel_.p - r[i]};
    collect(r, std::span<const Letter>(&l, 1));
    collect(x, std::span<const Letter>(&l, 1));
  }
  return x;
}

Exponents PcPresentation::power(const Exponents& a, long long k) const {
  Exponents base = k < 0 ? inverse(a) : a;
  unsigned long long m = k < 0 ? static_cast<unsigned long long>(-(k + 1)) + 1 : static_cast<unsigned long long>(k);
  Exponents result = identity();
  while (m) {
    if (m & 1) result = multiply(result, base);
    m >>= 1;
    if (m) base = multiply(base, base);
  }
  return result;
}

Exponents PcPresentation::commutator(const Exponents& a, const Exponents& b) const {
  Exponents e = inverse(a);
  collect(e, to_word(inverse(b)));
  collect(e, to_word(a));
  collect(e, to_word(b));
  return e;
}

Exponents PcPresentation::conjugate(const Exponents& a, const Exponents& g) const {
  Exponents e = inverse(g);
  collect(e, to_word(a));
  collect(e, to_word(g));
  return e;
}

std::uint64_t PcPresentation::order_of(const Exponents& a) const {
  std::uint64_t o = 1;
  Exponents x = a;
  while (!is_identity(x)) {
    x = power(x, rel_.p);
    o *= rel_.p;
  }
  return o;
}

std::uint64_t PcPresentation::order() const {
  std::uint64_t o = 1;
  for (unsigned i = 0; i < rel_.n; ++i) {
    if (o > UINT64_MAX / rel_.p) throw std::overflow_error("group order exceeds 64 bits");
    o *= rel_.p;
  }
  return o;
}

std::uint64_t PcPresentation::index_of(const Exponents& e) const {
  std::uint64_t idx = 0;
  for (Exp x : e) idx = idx * rel_.p + x;
  return idx;
}

Exponents PcPresentation::from_index(std::uint64_t idx) const {
  Exponents e(rel_.n, 0);
  for (unsigned i = rel_.n; i-- > 0;) {
    e[i] = static_cast<Exp>(idx % rel_.p);
    idx /= rel_.p;
  }
  return e;
}

std::vector<ConsistencyFailure> PcPresentation::consistency_failures(bool stop_at_first) const {
  const unsigned n = rel_.n;
  const unsigned p = rel_.p;
  std::vector<ConsistencyFailure> out;
  auto name = [this](unsigned i) { return gen_name(i); };
  // normal word of g_j g_i for j > i: g_i g_j [g_j, g_i]
  auto swapped = [&](unsigned j, unsigned i) {
    Word w{{i, 1}, {j, 1}};
    const Word& c = comm_tail(j, i);
    w.insert(w.end(), c.begin(), c.end());
    return w;
  };
  auto check = [&](Word lhs, Word rhs, std::string label) {
    Exponents a = collect_word(lhs);
    Exponents b = collect_word(rhs);
    if (a != b) out.push_back({std::move(label), std::move(a), std::move(b)});
    return !(stop_at_first && !out.empty());
  };
  auto append = [](Word w, const Word& tail) {
    w.insert(w.end(), tail.begin(), tail.end());
    return w;
  };

  for (unsigned k = 0; k < n; ++k)
    for (unsigned j = 0; j < k; ++j)
      for (unsigned i = 0; i < j; ++i) {
        Word lhs = append(swapped(k, j), Word{{i, 1}});
        Word rhs = append(Word{{k, 1}}, swapped(j, i));
        if (!check(lhs, rhs, "(" + name(k) + " " + name(j) + ") " + name(i))) return out;
      }
  for (unsigned j = 0; j < n; ++j)
    for (unsigned i = 0; i < j; ++i) {
      Word lhs = append(rel_.powers[j], Word{{i, 1}});
      Word rhs = append(Word{{j, p - 1}}, swapped(j, i));
      if (!check(lhs, rhs, name(j) + "^p " + name(i))) return out;
      lhs = append(Word{{j, 1}}, rel_.powers[i]);
      rhs = append(swapped(j, i), Word{{i, p - 1}});
      if (!check(lhs, rhs, name(j) + " " + name(i) + "^p")) return out;
    }
  for (unsigned i = 0; i < n; ++i) {
    Word lhs = append(Word{{i, 1}}, rel_.powers[i]);
    Word rhs = append(rel_.powers[i], Word{{i, 1}});
    if (!check(lhs, rhs, name(i) + "^(p+1)")) return out;
  }
  return out;
}

namespace {
void require_same_parent(const Element& a, const Element& b) {
  if (&a.parent() != &b.parent()) throw std::invalid_argument("elements belong to different presentations");
}
}  // namespace

Element multiply(const Element& a, const Element& b) {
  require_same_parent(a, b);
  return {a.parent(), a.parent().multiply(a.exponents(), b.exponents())};
}

Element operator*(const Element& a, const Element& b) { return multiply(a, b); }

Element inverse(const Element& a) { return {a.parent(), a.parent().inverse(a.exponents())}; }

Element power(const Element& a, long long k) { return {a.parent(), a.parent().power(a.exponents(), k)}; }

Element commutator(const Element& a, const Element& b) {
  require_same_parent(a, b);
  return {a.parent(), a.parent().commutator(a.exponents(), b.exponents())};
}

std::uint64_t order_of(const Element& a) { return a.parent().order_of(a.exponents()); }

std::uint64_t group_exponent(const PcPresentation& g) {
  // Orders are p-powers, so the exponent is the largest order among the
  // elements; a generator of the top layer often attains it early.
  const std::uint64_t total = g.order();
  std::uint64_t best = 1;
  const std::uint64_t bound = [&] {
    std::uint64_t b = 1;
    for (unsigned i = 0; i < g.size(); ++i) b *= g.prime();
    return b;
  }();
  for (std::uint64_t idx = 1; idx < total; ++idx) {
    best = std::max(best, g.order_of(g.from_index(idx)));
    if (best == bound) break;
  }
  return best;
}

std::string format_element(const PcPresentation& g, const Exponents& e) {
  std::ostringstream os;
  bool first = true;
  for (unsigned i = 0; i < e.size(); ++i) {
    if (!e[i]) continue;
    if (!first) os << '*';
    os << g.gen_name(i);
    if (e[i] != 1) os << '^' << static_cast<unsigned>(e[i]);
    first = false;
  }
  return first ? "1" : os.str();
}

}  // namespace b0lab
