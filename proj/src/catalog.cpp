#include "b0lab/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
#include <sstream>
#include <tuple>

namespace b0lab {

namespace {

unsigned powmod(unsigned long long a, unsigned e, unsigned p) {
  unsigned long long r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return static_cast<unsigned>(r);
}

unsigned mod(long long a, unsigned p) {
  long long r = a % static_cast<long long>(p);
  return static_cast<unsigned>(r < 0 ? r + p : r);
}

void require_odd_prime(unsigned p) {
  if (p < 3 || p % 2 == 0) throw std::invalid_argument("p must be an odd prime");
  for (unsigned d = 3; d * d <= p; d += 2)
    if (p % d == 0) throw std::invalid_argument("p must be an odd prime");
}

// Relation builder with 1-based generator numbers and signed exponents.
struct Builder {
  PcRelations rel;
  Builder(unsigned p, std::vector<std::string> names, std::string name) : rel(p, static_cast<unsigned>(names.size())) {
    rel.gen_names = std::move(names);
    rel.name = std::move(name);
  }
  Word word(std::initializer_list<std::pair<unsigned, long long>> letters) const {
    Word w;
    for (auto [g, e] : letters) {
      const unsigned r = mod(e, rel.p);
      if (r) w.push_back({g - 1, r});
    }
    return w;
  }
  void pow(unsigned i, std::initializer_list<std::pair<unsigned, long long>> w) { rel.powers[i - 1] = word(w); }
  void comm(unsigned j, unsigned i, std::initializer_list<std::pair<unsigned, long long>> w) {
    Word x = word(w);
    if (!x.empty()) rel.comms[{j - 1, i - 1}] = std::move(x);
  }
  PcGroup build() {
    PcGroup g = make_group(std::move(rel));
    auto bad = g->consistency_failures(true);
    if (!bad.empty()) throw std::logic_error("built-in presentation " + g->name() + " is inconsistent at " + bad[0].overlap);
    return g;
  }
};

std::string family_label(unsigned family, const std::string& variant) {
  return "phi" + std::to_string(family) + ":" + variant;
}

}  // namespace

bool is_primitive_root(unsigned a, unsigned p) {
  if (a % p == 0) return false;
  unsigned long long x = 1;
  for (unsigned k = 1; k < p - 1; ++k) {
    x = x * a % p;
    if (x == 1) return false;
  }
  return p == 2 || x * a % p == 1;
}

unsigned smallest_primitive_root(unsigned p) {
  for (unsigned a = 1; a < p; ++a)
    if (is_primitive_root(a, p)) return a;
  throw std::invalid_argument("no primitive root");
}

unsigned smallest_nonresidue(unsigned p) {
  for (unsigned a = 2; a < p; ++a)
    if (powmod(a, (p - 1) / 2, p) == p - 1) return a;
  throw std::invalid_argument("no quadratic non-residue");
}

NumberTheoryContext::NumberTheoryContext(unsigned prime) : p(prime) {
  require_odd_prime(prime);
  g = smallest_primitive_root(p);
  nu = smallest_nonresidue(p);
  alpha = g;
}

unsigned NumberTheoryContext::inv(unsigned a) const { return powmod(a, p - 2, p); }
unsigned NumberTheoryContext::pow(unsigned a, unsigned e) const { return powmod(a, e, p); }

std::string FamilyId::label() const { return family_label(family, variant); }

PcGroup build_phi10(unsigned p, const std::string& variant) {
  require_odd_prime(p);
  Builder b(p, {"f1", "f2", "f3", "f4", "f5"}, "");
  b.comm(2, 1, {{3, 1}});
  b.comm(3, 1, {{4, 1}});
  b.comm(4, 1, {{5, 1}});
  b.comm(3, 2, {{5, 1}});
  if (p == 3) {
    std::string v = variant;
    if (v == "1^5") v = "28";
    if (v == "2111a0") v = "29";
    if (v == "2111a1") v = "30";
    if (v != "28" && v != "29" && v != "30") throw std::invalid_argument("phi10 at p=3: variant must be 28, 29 or 30");
    b.pow(2, {{4, -1}});
    b.pow(3, {{5, -1}});
    if (v == "29") b.pow(1, {{5, 1}});
    if (v == "30") b.pow(1, {{5, -1}});
    b.rel.name = "phi10:" + v;
    return b.build();
  }
  NumberTheoryContext nt(p);
  b.rel.name = family_label(10, variant);
  if (variant == "1^5") return b.build();
  if (variant.size() > 5 && variant.compare(0, 4, "2111") == 0) {
    const char kind = variant[4];
    const unsigned r = static_cast<unsigned>(std::stoul(variant.substr(5)));
    const unsigned k = nt.pow(nt.alpha, r);
    if (kind == 'a' && r < std::gcd(4u, p - 1)) {
      b.pow(1, {{5, k}});
      return b.build();
    }
    if (kind == 'b' && r < std::gcd(3u, p - 1)) {
      b.pow(2, {{5, k}});
      return b.build();
    }
  }
  throw std::invalid_argument("phi10: unknown variant " + variant);
}

PcGroup build_phi6(unsigned p, const std::string& variant) {
  NumberTheoryContext nt(p);
  // pc order f1, f2, f0, h1, h2
  Builder b(p, {"f1", "f2", "f0", "h1", "h2"}, family_label(6, variant));
  b.comm(2, 1, {{3, -1}});
  b.comm(3, 1, {{4, 1}});
  b.comm(3, 2, {{5, 1}});
  const unsigned half = (p - 1) / 2;
  auto parse_r = [&](const std::string& prefix) -> std::optional<unsigned> {
    if (variant.compare(0, prefix.size(), prefix) != 0 || variant.size() == prefix.size()) return std::nullopt;
    const std::string rest = variant.substr(prefix.size());
    if (rest == "nu") return nt.nu;
    if (rest.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
    return static_cast<unsigned>(std::stoul(rest));
  };
  if (variant == "221a") {
    b.pow(1, {{4, 1}});
    b.pow(2, {{5, 1}});
    return b.build();
  }
  if (variant == "221d0") {
    b.pow(1, {{5, 1}});
    b.pow(2, {{4, nt.nu}});
    return b.build();
  }
  if (variant == "1^5") return b.build();
  if (variant == "2111a" && p >= 5) {
    b.pow(1, {{4, 1}});
    return b.build();
  }
  if (auto r = parse_r("221b"); r && *r >= 1 && *r <= half) {
    b.pow(1, {{4, nt.pow(nt.g, *r)}});
    b.pow(2, {{5, 1}});
    return b.build();
  }
  if (auto r = parse_r("221c"); r && (*r == 1 || *r == nt.nu)) {
    const long long e = -static_cast<long long>(*r) * nt.inv(4);
    b.pow(1, {{5, e}});
    b.pow(2, {{4, *r}, {5, *r}});
    return b.build();
  }
  if (auto r = parse_r("221d"); r && *r >= 1 && *r <= half) {
    const unsigned k = mod((static_cast<long long>(nt.pow(nt.g, 2 * *r + 1)) - 1) * nt.inv(4), p);
    b.pow(1, {{5, k}});
    b.pow(2, {{4, 1}, {5, 1}});
    return b.build();
  }
  if (auto r = parse_r("2111b"); p >= 5 && r && (*r == 1 || *r == nt.nu)) {
    b.pow(2, {{4, *r}});
    return b.build();
  }
  throw std::invalid_argument("phi6: unknown variant " + variant + " for p=" + std::to_string(p));
}

PcGroup build_phi7(unsigned p, const std::string& variant) {
  require_odd_prime(p);
  if (p == 3) {
    std::string v = variant;
    if (v == "2111b1") v = "56";
    if (v == "2111bnu") v = "57";
    if (v == "1^5") v = "58";
    if (v == "2111a") v = "59";
    if (v == "2111c") v = "60";
    Builder b(3, {"f1", "f2", "f3", "f4", "f5"}, "phi7:" + v);
    b.comm(2, 1, {{4, 1}});
    b.comm(3, 2, {{5, 1}});
    b.comm(4, 1, {{5, 1}});
    if (v == "56") return b.build();
    if (v == "57") {
      b.pow(2, {{5, 1}});
      return b.build();
    }
    if (v == "58") {
      b.pow(2, {{5, 2}});
      return b.build();
    }
    if (v == "59") {
      b.pow(1, {{5, 1}});
      b.pow(2, {{5, -1}});
      return b.build();
    }
    if (v == "60") {
      b.pow(3, {{5, 1}});
      return b.build();
    }
    throw std::invalid_argument("phi7 at p=3: variant must be one of 56..60");
  }
  NumberTheoryContext nt(p);
  // pc order f0, f1, f4, f2, f3
  Builder b(p, {"f0", "f1", "f4", "f2", "f3"}, family_label(7, variant));
  b.comm(2, 1, {{4, 1}});   // [f1,f0] = f2
  b.comm(4, 1, {{5, 1}});   // [f2,f0] = f3
  b.comm(3, 2, {{5, -1}});  // [f4,f1] = [f1,f4]^-1 = f3^-1
  if (variant == "2111a") b.pow(1, {{5, 1}});
  else if (variant == "2111b1") b.pow(2, {{5, 1}});
  else if (variant == "2111bnu") b.pow(2, {{5, nt.nu}});
  else if (variant == "2111c") b.pow(3, {{5, 1}});
  else if (variant != "1^5") throw std::invalid_argument("phi7: unknown variant " + variant);
  return b.build();
}

PcGroup build_phi5(unsigned p, const std::string& variant) {
  require_odd_prime(p);
  Builder b(p, {"f1", "f2", "f3", "f4", "f5"}, family_label(5, variant));
  b.comm(2, 1, {{5, -1}});
  b.comm(4, 3, {{5, -1}});
  if (variant == "2111") b.pow(1, {{5, 1}});
  else if (variant != "1^5") throw std::invalid_argument("phi5: unknown variant " + variant);
  return b.build();
}

namespace {
PcGroup abelian_group(const std::vector<unsigned>& parts, unsigned p, std::string name) {
  std::vector<std::string> names;
  unsigned total = 0;
  for (unsigned part : parts) {
    if (part == 0) throw std::invalid_argument("abelian: zero part");
    total += part;
  }
  PcRelations rel(p, total);
  rel.name = std::move(name);
  unsigned at = 0;
  for (std::size_t c = 0; c < parts.size(); ++c) {
    for (unsigned k = 0; k < parts[c]; ++k) {
      rel.gen_names.push_back("a" + std::to_string(c + 1) + (k ? "_" + std::to_string(k) : ""));
      if (k + 1 < parts[c]) rel.powers[at] = {{at + 1, 1}};
      ++at;
    }
  }
  return make_group(std::move(rel));
}

std::string partition_label(const std::vector<unsigned>& parts) {
  if (parts.size() == 5) return "1^5";
  std::string s;
  for (unsigned x : parts) s += std::to_string(x);
  return s;
}

std::vector<unsigned> parse_partition(const std::string& s) {
  std::vector<unsigned> parts;
  if (s == "1^5") return {1, 1, 1, 1, 1};
  if (s.find(',') != std::string::npos) {
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) parts.push_back(static_cast<unsigned>(std::stoul(tok)));
  } else {
    for (char c : s) {
      if (c < '1' || c > '9') throw std::invalid_argument("bad partition " + s);
      parts.push_back(static_cast<unsigned>(c - '0'));
    }
  }
  return parts;
}

const std::vector<std::vector<unsigned>>& partitions_of_5() {
  static const std::vector<std::vector<unsigned>> parts{{5}, {4, 1}, {3, 2}, {3, 1, 1}, {2, 2, 1}, {2, 1, 1, 1}, {1, 1, 1, 1, 1}};
  return parts;
}
}  // namespace

PcGroup build_abelian(const std::vector<unsigned>& partition, unsigned p) {
  require_odd_prime(p);
  std::vector<unsigned> sorted = partition;
  std::sort(sorted.rbegin(), sorted.rend());
  if (std::accumulate(sorted.begin(), sorted.end(), 0u) != 5 || (!sorted.empty() && sorted.back() == 0))
    throw std::invalid_argument("build_abelian: not a partition of 5");
  return abelian_group(sorted, p, family_label(1, partition_label(sorted)));
}

std::vector<std::string> family_variants(unsigned family, unsigned p) {
  NumberTheoryContext nt(p);
  std::vector<std::string> v;
  switch (family) {
    case 1:
      for (const auto& parts : partitions_of_5()) v.push_back(partition_label(parts));
      break;
    case 5:
      v = {"2111", "1^5"};
      break;
    case 6:
      v.push_back("221a");
      for (unsigned r = 1; r <= (p - 1) / 2; ++r) v.push_back("221b" + std::to_string(r));
      v.push_back("221c1");
      v.push_back("221cnu");
      v.push_back("221d0");
      for (unsigned r = 1; r <= (p - 1) / 2; ++r) v.push_back("221d" + std::to_string(r));
      if (p >= 5) {
        v.push_back("2111a");
        v.push_back("2111b1");
        v.push_back("2111bnu");
      }
      v.push_back("1^5");
      break;
    case 7:
      if (p == 3) v = {"56", "57", "58", "59", "60"};
      else v = {"2111a", "2111b1", "2111bnu", "2111c", "1^5"};
      break;
    case 10:
      if (p == 3) {
        v = {"28", "29", "30"};
      } else {
        v.push_back("1^5");
        for (unsigned r = 0; r < std::gcd(4u, p - 1); ++r) v.push_back("2111a" + std::to_string(r));
        for (unsigned r = 0; r < std::gcd(3u, p - 1); ++r) v.push_back("2111b" + std::to_string(r));
      }
      break;
    default:
      throw std::invalid_argument("no built-in presentations for family " + std::to_string(family));
  }
  return v;
}

namespace {
PcGroup build_family(unsigned family, unsigned p, const std::string& variant) {
  switch (family) {
    case 1:
      return build_abelian(parse_partition(variant), p);
    case 5:
      return build_phi5(p, variant);
    case 6:
      return build_phi6(p, variant);
    case 7:
      return build_phi7(p, variant);
    case 10:
      return build_phi10(p, variant);
    default:
      throw std::invalid_argument("no built-in presentations for family " + std::to_string(family));
  }
}
}  // namespace

std::vector<CatalogEntry> catalog(unsigned p) {
  std::vector<CatalogEntry> out;
  std::optional<GapIdTable> ids;
  if (p == 3) ids = gap_id_map(3);
  for (unsigned family : {1u, 5u, 6u, 7u, 10u}) {
    for (const auto& v : family_variants(family, p)) {
      CatalogEntry e{{family, v, p}, build_family(family, p, v), std::nullopt};
      if (p == 3 && (family == 7 || family == 10)) e.gap_id = static_cast<unsigned>(std::stoul(v));
      out.push_back(std::move(e));
    }
  }
  return out;
}

PcGroup build_small(const std::string& name, unsigned p) {
  if (name == "heisenberg") {
    PcRelations rel(p, 3);
    rel.name = "small:heisenberg";
    rel.comms[{1, 0}] = {{2, 1}};
    return make_group(std::move(rel));
  }
  if (name == "metacyclic") {
    // exponent p^2, order p^3: x^p = z, [y, x] = z
    PcRelations rel(p, 3);
    rel.name = "small:metacyclic";
    rel.powers[0] = {{2, 1}};
    rel.comms[{1, 0}] = {{2, 1}};
    return make_group(std::move(rel));
  }
  auto colon = name.find(':');
  if (colon != std::string::npos) {
    const std::string kind = name.substr(0, colon);
    const std::string arg = name.substr(colon + 1);
    if (kind == "abelian") return abelian_group(parse_partition(arg), p, "small:" + name);
    if (kind == "elementary") return abelian_group(std::vector<unsigned>(std::stoul(arg), 1), p, "small:" + name);
    if (kind == "cyclic") return abelian_group({static_cast<unsigned>(std::stoul(arg))}, p, "small:" + name);
  }
  throw std::invalid_argument("unknown small group " + name);
}

CatalogEntry catalog_lookup(const std::string& spec, unsigned p) {
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("catalog spec needs family:variant, got " + spec);
  const std::string head = spec.substr(0, colon);
  const std::string variant = spec.substr(colon + 1);
  if (head == "small") return {{0, variant, p}, build_small(variant, p), std::nullopt};
  if (head.rfind("phi", 0) != 0) throw std::invalid_argument("unknown catalog family " + head);
  const unsigned family = static_cast<unsigned>(std::stoul(head.substr(3)));
  std::string v = variant;
  if (family == 1) v = partition_label(parse_partition(variant));
  CatalogEntry e{{family, v, p}, build_family(family, p, v), std::nullopt};
  if (p == 3 && (family == 7 || family == 10)) {
    const std::string name = e.group->name();
    e.gap_id = static_cast<unsigned>(std::stoul(name.substr(name.find(':') + 1)));
    e.id.variant = name.substr(name.find(':') + 1);
  }
  return e;
}

FamilyCounts family_counts(unsigned p) {
  require_odd_prime(p);
  const unsigned g3 = std::gcd(3u, p - 1), g4 = std::gcd(4u, p - 1);
  FamilyCounts c;
  c.per_family = {7, 15, 13, p + 8, 2, p + 7, 5, 1, g3 + 2, g4 + g3 + 1};
  if (p == 3) {
    c.per_family[5] = 7;
    c.per_family[9] = 3;
  }
  c.phi10 = c.per_family[9];
  c.total = std::accumulate(c.per_family.begin(), c.per_family.end(), 0u);
  c.bagnera = 2 * p + 61 + g4 + 2 * g3;
  return c;
}

GapIdTable gap_id_map(unsigned p) {
  GapIdTable t;
  t.p = p;
  auto range = [](unsigned a, unsigned b) {
    std::vector<unsigned> v;
    for (unsigned i = a; i <= b; ++i) v.push_back(i);
    return v;
  };
  switch (p) {
    case 3:
      t.phi10 = range(28, 30);
      t.phi10_variants = {{"1^5", 28}, {"2111a0", 29}, {"2111a1", 30}};
      t.phi7_variants = {{"2111b1", 56}, {"2111bnu", 57}, {"1^5", 58}, {"2111a", 59}, {"2111c", 60}};
      break;
    case 5:
      t.phi10 = range(33, 38);
      break;
    case 7:
      t.phi10 = range(37, 42);
      break;
    case 11:
      t.phi10 = range(39, 42);
      break;
    default:
      throw std::invalid_argument("gap_id_map: no table for p=" + std::to_string(p));
  }
  return t;
}

PcpSyntaxError::PcpSyntaxError(std::size_t l, std::size_t c, const std::string& msg)
    : std::runtime_error("line " + std::to_string(l) + ", col " + std::to_string(c) + ": " + msg), line(l), col(c) {}

namespace {

struct Token {
  std::string text;
  std::size_t col;
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    if (line[i] == ':') {
      out.push_back({":", i + 1});
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) && line[j] != ':') ++j;
    out.push_back({line.substr(i, j - i), i + 1});
    i = j;
  }
  return out;
}

long long parse_int(const Token& t, std::size_t line) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(t.text, &used);
    if (used != t.text.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw PcpSyntaxError(line, t.col, "expected an integer, got '" + t.text + "'");
  }
}

}  // namespace

PcGroup parse_pcp(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  std::optional<unsigned> p, n;
  std::string name;
  std::vector<unsigned> weights;
  std::vector<std::tuple<std::size_t, unsigned, Word>> pows;
  std::vector<std::tuple<std::size_t, unsigned, unsigned, Word>> comms;

  auto parse_gen = [&](const Token& t) -> unsigned {
    if (!n) throw PcpSyntaxError(lineno, t.col, "relation before 'gens'");
    long long k = parse_int(t, lineno);
    if (k < 1 || k > static_cast<long long>(*n))
      throw PcpSyntaxError(lineno, t.col, "generator index " + t.text + " out of range 1.." + std::to_string(*n));
    return static_cast<unsigned>(k - 1);
  };
  auto parse_word = [&](const std::vector<Token>& toks, std::size_t from) {
    Word w;
    long long last = -1;
    for (std::size_t i = from; i < toks.size(); ++i) {
      const Token& t = toks[i];
      auto caret = t.text.find('^');
      Token gen{t.text.substr(0, caret), t.col};
      unsigned g = parse_gen(gen);
      long long e = 1;
      if (caret != std::string::npos) e = parse_int({t.text.substr(caret + 1), t.col + caret + 1}, lineno);
      if (static_cast<long long>(g) <= last)
        throw PcpSyntaxError(lineno, t.col, "generators in a word must be strictly increasing");
      last = g;
      const unsigned r = mod(e, *p);
      if (r) w.push_back({g, r});
    }
    return w;
  };
  auto expect_colon = [&](const std::vector<Token>& toks, std::size_t at) {
    if (toks.size() <= at || toks[at].text != ":")
      throw PcpSyntaxError(lineno, toks.size() > at ? toks[at].col : 1, "expected ':'");
  };

  while (std::getline(in, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    auto toks = tokenize(raw);
    if (toks.empty()) continue;
    const std::string& kw = toks[0].text;
    if (kw == "p") {
      if (toks.size() != 2) throw PcpSyntaxError(lineno, toks[0].col, "expected 'p <prime>'");
      long long v = parse_int(toks[1], lineno);
      if (v < 2 || v > 251) throw PcpSyntaxError(lineno, toks[1].col, "prime out of range");
      for (long long d = 2; d * d <= v; ++d)
        if (v % d == 0) throw PcpSyntaxError(lineno, toks[1].col, "p is not prime");
      p = static_cast<unsigned>(v);
    } else if (kw == "gens") {
      if (!p) throw PcpSyntaxError(lineno, toks[0].col, "'gens' before 'p'");
      if (toks.size() != 2) throw PcpSyntaxError(lineno, toks[0].col, "expected 'gens <n>'");
      long long v = parse_int(toks[1], lineno);
      if (v < 0 || v > 64) throw PcpSyntaxError(lineno, toks[1].col, "generator count out of range");
      n = static_cast<unsigned>(v);
    } else if (kw == "name") {
      auto start = raw.find_first_not_of(" \t", raw.find("name") + 4);
      name = start == std::string::npos ? "" : raw.substr(start);
      while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.pop_back();
    } else if (kw == "weights") {
      if (!n) throw PcpSyntaxError(lineno, toks[0].col, "'weights' before 'gens'");
      if (toks.size() != *n + 1) throw PcpSyntaxError(lineno, toks[0].col, "weights needs one entry per generator");
      weights.clear();
      for (std::size_t i = 1; i < toks.size(); ++i) weights.push_back(static_cast<unsigned>(parse_int(toks[i], lineno)));
    } else if (kw == "pow") {
      if (!n) throw PcpSyntaxError(lineno, toks[0].col, "relation before 'gens'");
      if (toks.size() < 3) throw PcpSyntaxError(lineno, toks[0].col, "expected 'pow <i> : <word>'");
      unsigned i = parse_gen(toks[1]);
      expect_colon(toks, 2);
      pows.emplace_back(lineno, i, parse_word(toks, 3));
    } else if (kw == "comm") {
      if (!n) throw PcpSyntaxError(lineno, toks[0].col, "relation before 'gens'");
      if (toks.size() < 4) throw PcpSyntaxError(lineno, toks[0].col, "expected 'comm <j> <i> : <word>'");
      unsigned j = parse_gen(toks[1]);
      unsigned i = parse_gen(toks[2]);
      if (j <= i) throw PcpSyntaxError(lineno, toks[1].col, "comm needs j > i");
      expect_colon(toks, 3);
      comms.emplace_back(lineno, j, i, parse_word(toks, 4));
    } else {
      throw PcpSyntaxError(lineno, toks[0].col, "unknown keyword '" + kw + "'");
    }
  }
  if (!p) throw PcpSyntaxError(lineno, 1, "missing 'p' line");
  if (!n) throw PcpSyntaxError(lineno, 1, "missing 'gens' line");
  PcRelations rel(*p, *n);
  rel.name = name;
  rel.weights = weights;
  std::vector<bool> seen_pow(*n, false);
  for (auto& [line, i, w] : pows) {
    if (seen_pow[i]) throw PcpSyntaxError(line, 1, "duplicate power relation");
    seen_pow[i] = true;
    for (const auto& l : w)
      if (l.gen <= i) throw PcpSyntaxError(line, 1, "power tail must use generators after " + std::to_string(i + 1));
    rel.powers[i] = std::move(w);
  }
  for (auto& [line, j, i, w] : comms) {
    if (rel.comms.count({j, i})) throw PcpSyntaxError(line, 1, "duplicate commutator relation");
    for (const auto& l : w)
      if (l.gen <= j) throw PcpSyntaxError(line, 1, "commutator tail must use generators after " + std::to_string(j + 1));
    rel.comms[{j, i}] = std::move(w);
  }
  PcGroup g = make_group(std::move(rel));
  auto bad = g->consistency_failures(true);
  if (!bad.empty())
    throw InconsistentPresentation("inconsistent presentation: overlap " + bad[0].overlap + " gives " +
                                   format_element(*g, bad[0].lhs) + " and " + format_element(*g, bad[0].rhs));
  return g;
}

PcGroup load_pcp(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_pcp(ss.str());
}

std::string serialize_pcp(const PcPresentation& g) {
  std::ostringstream os;
  auto word = [&](const Word& w) {
    for (const auto& l : w) os << ' ' << l.gen + 1 << '^' << l.exp;
  };
  os << "p " << g.prime() << "\ngens " << g.size() << '\n';
  if (!g.name().empty()) os << "name " << g.name() << '\n';
  const auto& rel = g.relations();
  if (!rel.weights.empty()) {
    os << "weights";
    for (unsigned w : rel.weights) os << ' ' << w;
    os << '\n';
  }
  for (unsigned i = 0; i < g.size(); ++i)
    if (!g.power_tail(i).empty()) {
      os << "pow " << i + 1 << " :";
      word(g.power_tail(i));
      os << '\n';
    }
  for (const auto& [key, w] : rel.comms) {
    os << "comm " << key.first + 1 << ' ' << key.second + 1 << " :";
    word(w);
    os << '\n';
  }
  return os.str();
}

}  // namespace b0lab
