// Independent brute-force oracles shared by the test binaries.

#ifndef B0LAB_TEST_SUPPORT_HPP
#define B0LAB_TEST_SUPPORT_HPP

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "b0lab/pcgroup.hpp"

namespace b0lab::test {

/// Smith normal form over Z of the abelianized relation matrix.
inline std::vector<std::uint64_t> smith_invariants(std::vector<std::vector<long long>> m) {
  std::vector<std::uint64_t> out;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    while (true) {
      // pivot: smallest nonzero absolute value in the remaining block
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = r; i < rows; ++i)
        for (std::size_t j = c; j < cols; ++j)
          if (m[i][j] && (pi == rows || std::llabs(m[i][j]) < std::llabs(m[pi][pj]))) {
            pi = i;
            pj = j;
          }
      if (pi == rows) return out;
      std::swap(m[r], m[pi]);
      for (auto& row : m) std::swap(row[c], row[pj]);
      bool clean = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        long long q = m[i][c] / m[r][c];
        for (std::size_t j = c; j < cols; ++j) m[i][j] -= q * m[r][j];
        if (m[i][c]) clean = false;
      }
      for (std::size_t j = c + 1; j < cols; ++j) {
        long long q = m[r][j] / m[r][c];
        for (std::size_t i = r; i < rows; ++i) m[i][j] -= q * m[i][c];
        if (m[r][j]) clean = false;
      }
      if (!clean) continue;
      // divisibility of the rest of the block
      bool divides = true;
      for (std::size_t i = r + 1; i < rows && divides; ++i)
        for (std::size_t j = c + 1; j < cols; ++j)
          if (m[i][j] % m[r][c]) {
            for (std::size_t k = c; k < cols; ++k) m[r][k] += m[i][k];
            divides = false;
            break;
          }
      if (!divides) continue;
      break;
    }
    out.push_back(static_cast<std::uint64_t>(std::llabs(m[r][c])));
    ++r;
  }
  return out;
}

inline std::vector<std::uint64_t> abelianization_by_smith_form(const PcPresentation& g) {
  const unsigned n = g.size();
  const long long p = g.prime();
  std::vector<std::vector<long long>> m;
  for (unsigned i = 0; i < n; ++i) {
    std::vector<long long> row(n, 0);
    row[i] = p;
    for (const auto& l : g.power_tail(i)) row[l.gen] -= l.exp;
    m.push_back(row);
    for (unsigned k = 0; k < i; ++k) {
      if (g.comm_tail(i, k).empty()) continue;
      std::vector<long long> c(n, 0);
      for (const auto& l : g.comm_tail(i, k)) c[l.gen] += l.exp;
      m.push_back(c);
    }
  }
  std::vector<std::uint64_t> inv;
  for (auto d : smith_invariants(m))
    if (d != 1) inv.push_back(d);
  std::sort(inv.begin(), inv.end());
  return inv;
}

inline bool associative_on_sample(const PcPresentation& g, unsigned count, unsigned seed = 1) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, g.order() - 1);
  for (unsigned t = 0; t < count; ++t) {
    Exponents a = g.from_index(pick(rng)), b = g.from_index(pick(rng)), c = g.from_index(pick(rng));
    if (g.multiply(g.multiply(a, b), c) != g.multiply(a, g.multiply(b, c))) return false;
  }
  return true;
}

inline std::uint64_t brute_force_commuting_pairs(const PcPresentation& g) {
  std::vector<Exponents> all;
  for (std::uint64_t i = 0; i < g.order(); ++i) all.push_back(g.from_index(i));
  std::uint64_t count = 0;
  for (const auto& x : all)
    for (const auto& y : all)
      if (g.multiply(x, y) == g.multiply(y, x)) ++count;
  return count;
}


inline long long binom(long long a, long long b) {
  if (b < 0 || a < b) return 0;
  long long r = 1;
  for (long long i = 0; i < b; ++i) r = r * (a - i) / (i + 1);
  return r;
}

/// Product of powers g_k^e in the given order.
inline Exponents word_value(const PcPresentation& g, const std::vector<std::pair<Exponents, long long>>& factors) {
  Exponents x = g.identity();
  for (const auto& [base, e] : factors) x = g.multiply(x, g.power(base, e));
  return x;
}

/// Failures of the commutator-collection identities for f1..f5 (pc generators
/// 0..4) satisfying the Phi10 relations, for 1 <= i, j <= p-1.
inline std::vector<std::string> phi10_collection_failures(const PcPresentation& g) {
  const long long p = g.prime();
  std::vector<std::string> bad;
  auto f = [&](unsigned k) { return g.generator(k - 1); };
  for (long long i = 1; i < p; ++i)
    for (long long j = 1; j < p; ++j) {
      auto check = [&](const char* label, const Exponents& lhs, const Exponents& rhs) {
        if (lhs != rhs) bad.push_back(std::string(label) + " i=" + std::to_string(i) + " j=" + std::to_string(j));
      };
      check("f4^i f1^j", word_value(g, {{f(4), i}, {f(1), j}}), word_value(g, {{f(1), j}, {f(4), i}, {f(5), i * j}}));
      check("f3^i f2^j", word_value(g, {{f(3), i}, {f(2), j}}), word_value(g, {{f(2), j}, {f(3), i}, {f(5), i * j}}));
      check("f3^i f1^j", word_value(g, {{f(3), i}, {f(1), j}}),
            word_value(g, {{f(1), j}, {f(3), i}, {f(4), i * j}, {f(5), i * binom(j, 2)}}));
      check("f2^i f1^j", word_value(g, {{f(2), i}, {f(1), j}}),
            word_value(g, {{f(1), j}, {f(2), i}, {f(3), i * j}, {f(4), i * binom(j, 2)},
                           {f(5), i * binom(j, 3) + binom(i, 2) * j}}));
    }
  return bad;
}

/// Failures of the Phi6 collection identities (pc order f1 f2 f0 h1 h2) for
/// 0 <= i, j <= p-1.
inline std::vector<std::string> phi6_collection_failures(const PcPresentation& g) {
  const long long p = g.prime();
  std::vector<std::string> bad;
  const auto f1 = g.generator(0), f2 = g.generator(1), f0 = g.generator(2), h1 = g.generator(3), h2 = g.generator(4);
  for (long long i = 0; i < p; ++i)
    for (long long j = 0; j < p; ++j) {
      auto check = [&](const char* label, const Exponents& lhs, const Exponents& rhs) {
        if (lhs != rhs) bad.push_back(std::string(label) + " i=" + std::to_string(i) + " j=" + std::to_string(j));
      };
      check("f0^j f1^i", word_value(g, {{f0, j}, {f1, i}}), word_value(g, {{f1, i}, {f0, j}, {h1, i * j}}));
      check("f0^j f2^i", word_value(g, {{f0, j}, {f2, i}}), word_value(g, {{f2, i}, {f0, j}, {h2, i * j}}));
      check("f2^i f1^j", word_value(g, {{f2, i}, {f1, j}}),
            word_value(g, {{f1, j}, {f2, i}, {f0, -i * j}, {h1, -i * binom(j, 2)}, {h2, -j * binom(i, 2)}}));
    }
  return bad;
}

struct ReferenceRow {
  std::string multiplier;
  std::string b0;
  std::string center;
  std::string derived;
};

/// Columns of data/<dir>/invariants.tsv keyed by SmallGroups id.
inline std::map<unsigned, ReferenceRow> load_reference(const std::string& path) {
  std::map<unsigned, ReferenceRow> out;
  std::ifstream in(path);
  std::string line;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, '\t')) cols.push_back(c);
    if (header.empty()) {
      header = cols;
      continue;
    }
    ReferenceRow r;
    for (std::size_t k = 0; k < cols.size() && k < header.size(); ++k) {
      if (header[k] == "multiplier") r.multiplier = cols[k];
      if (header[k] == "b0") r.b0 = cols[k];
      if (header[k] == "center") r.center = cols[k];
      if (header[k] == "derived") r.derived = cols[k];
    }
    out[static_cast<unsigned>(std::stoul(cols[0]))] = r;
  }
  return out;
}

inline std::string data_path(const std::string& rel) { return std::string(B0LAB_DATA_DIR) + "/" + rel; }

}  // namespace b0lab::test

#endif  // B0LAB_TEST_SUPPORT_HPP
