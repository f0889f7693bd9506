#include "b0lab/pquotient.hpp"

#include <algorithm>
#include <stdexcept>

namespace b0lab {

namespace {

// Row echelon form over GF(p) with pivot = lowest column index.
class Echelon {
 public:
  Echelon(unsigned p, unsigned cols) : p_(p), cols_(cols), row_of_pivot_(cols, -1) {}

  void insert(std::vector<unsigned> v) {
    for (unsigned c = 0; c < cols_; ++c) {
      if (!v[c]) continue;
      const int r = row_of_pivot_[c];
      if (r < 0) {
        const unsigned inv = inverse(v[c]);
        for (unsigned k = c; k < cols_; ++k) v[k] = v[k] * inv % p_;
        row_of_pivot_[c] = static_cast<int>(rows_.size());
        rows_.push_back(std::move(v));
        return;
      }
      const unsigned f = v[c];
      const auto& row = rows_[r];
      for (unsigned k = c; k < cols_; ++k) v[k] = (v[k] + (p_ - f) * row[k]) % p_;
    }
  }

  // Clears every pivot column in the other rows.
  void reduce() {
    for (unsigned c = cols_; c-- > 0;) {
      const int r = row_of_pivot_[c];
      if (r < 0) continue;
      for (auto& other : rows_) {
        if (&other == &rows_[r] || !other[c]) continue;
        const unsigned f = other[c];
        for (unsigned k = c; k < cols_; ++k) other[k] = (other[k] + (p_ - f) * rows_[r][k]) % p_;
      }
    }
  }

  bool is_pivot(unsigned c) const { return row_of_pivot_[c] >= 0; }
  const std::vector<unsigned>& row_for(unsigned c) const { return rows_[row_of_pivot_[c]]; }

 private:
  unsigned inverse(unsigned a) const {
    for (unsigned b = 1; b < p_; ++b)
      if (a * b % p_ == 1) return b;
    throw std::logic_error("not invertible");
  }

  unsigned p_, cols_;
  std::vector<std::vector<unsigned>> rows_;
  std::vector<int> row_of_pivot_;
};

unsigned reduce_mod(long long e, unsigned p) {
  long long r = e % static_cast<long long>(p);
  return static_cast<unsigned>(r < 0 ? r + p : r);
}

Exponents lift_with(const PcPresentation& g, const std::vector<Exponents>& images, const FpWord& w) {
  Exponents r = g.identity();
  for (auto [gen, e] : w) {
    if (gen >= images.size()) throw std::invalid_argument("lift_word: unknown generator");
    r = g.multiply(r, g.power(images[gen], e));
  }
  return r;
}

}  // namespace

unsigned FpPresentation::add_generator(std::string name) {
  gens.push_back(std::move(name));
  return static_cast<unsigned>(gens.size() - 1);
}

void FpPresentation::validate() const {
  for (const auto& r : relators)
    for (auto [g, e] : r) {
      if (g >= gens.size()) throw std::invalid_argument("relator uses an undeclared generator");
      if (e == 0) throw std::invalid_argument("relator has a zero exponent");
    }
}

FpWord fp_inverse(const FpWord& w) {
  FpWord r;
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back({it->first, -it->second});
  return r;
}

FpWord fp_concat(std::initializer_list<FpWord> parts) {
  FpWord r;
  for (const auto& w : parts) r.insert(r.end(), w.begin(), w.end());
  return r;
}

FpWord fp_commutator(const FpWord& a, const FpWord& b) { return fp_concat({fp_inverse(a), fp_inverse(b), a, b}); }

FpPresentation fp_from_pc(const PcPresentation& g) {
  FpPresentation f;
  for (unsigned i = 0; i < g.size(); ++i) f.add_generator(g.gen_name(i));
  auto as_fp = [](const Word& w) {
    FpWord r;
    for (const auto& l : w) r.push_back({l.gen, static_cast<int>(l.exp)});
    return r;
  };
  for (unsigned i = 0; i < g.size(); ++i) {
    f.relators.push_back(fp_concat({FpWord{{i, static_cast<int>(g.prime())}}, fp_inverse(as_fp(g.power_tail(i)))}));
    for (unsigned k = 0; k < i; ++k)
      f.relators.push_back(fp_concat({fp_commutator({{i, 1}}, {{k, 1}}), fp_inverse(as_fp(g.comm_tail(i, k)))}));
  }
  return f;
}

PcQuotient class1_quotient(std::shared_ptr<const FpPresentation> f, unsigned p) {
  f->validate();
  const unsigned m = static_cast<unsigned>(f->gens.size());
  // Columns in reverse generator order so that later generators become pivots
  // (dependent) and earlier ones define the pc generators.
  Echelon ech(p, m);
  for (const auto& r : f->relators) {
    std::vector<unsigned> v(m, 0);
    for (auto [g, e] : r) v[m - 1 - g] = (v[m - 1 - g] + reduce_mod(e, p)) % p;
    ech.insert(std::move(v));
  }
  ech.reduce();
  std::vector<int> pc_of(m, -1);
  PcQuotient q;
  q.source = f;
  unsigned d = 0;
  for (unsigned g = 0; g < m; ++g)
    if (!ech.is_pivot(m - 1 - g)) {
      pc_of[g] = static_cast<int>(d++);
      q.definitions.push_back({Definition::Kind::image, g});
    }
  PcRelations rel(p, d);
  rel.name = "class-1 quotient";
  for (unsigned g = 0; g < m; ++g)
    if (pc_of[g] >= 0) rel.gen_names.push_back(f->gens[g]);
  rel.weights.assign(d, 1);
  q.group = make_group(std::move(rel));
  q.cls = d ? 1 : 0;
  q.weights.assign(d, 1);
  for (unsigned g = 0; g < m; ++g) {
    Exponents e(d, 0);
    if (pc_of[g] >= 0) {
      e[pc_of[g]] = 1;
    } else {
      // row: x_g + sum over free columns a_f x_f = 0
      const auto& row = ech.row_for(m - 1 - g);
      for (unsigned h = 0; h < m; ++h)
        if (pc_of[h] >= 0 && row[m - 1 - h]) e[pc_of[h]] = static_cast<Exp>((p - row[m - 1 - h]) % p);
    }
    q.images.push_back(std::move(e));
  }
  return q;
}

std::optional<PcQuotient> extend_one_class(const PcQuotient& q) {
  const PcPresentation& g = *q.group;
  const FpPresentation& f = *q.source;
  const unsigned p = g.prime();
  const unsigned n = g.size();
  const unsigned m = static_cast<unsigned>(f.gens.size());

  // Which relations are definitions (and therefore carry no tail).
  std::vector<bool> image_def(m, false), power_def(n, false);
  std::vector<std::vector<bool>> comm_def(n, std::vector<bool>(n, false));
  for (const auto& d : q.definitions) {
    if (d.kind == Definition::Kind::image) image_def[d.a] = true;
    if (d.kind == Definition::Kind::power) power_def[d.a] = true;
    if (d.kind == Definition::Kind::commutator) comm_def[d.a][d.b] = true;
  }
  // Tail slots; image tails first so that elimination prefers them.
  std::vector<Definition> slots;
  for (unsigned x = 0; x < m; ++x)
    if (!image_def[x]) slots.push_back({Definition::Kind::image, x});
  for (unsigned i = 0; i < n; ++i)
    if (!power_def[i]) slots.push_back({Definition::Kind::power, i});
  for (unsigned j = 0; j < n; ++j)
    for (unsigned i = 0; i < j; ++i)
      if (!comm_def[j][i]) slots.push_back({Definition::Kind::commutator, j, i});
  const unsigned t = static_cast<unsigned>(slots.size());

  PcRelations tailed = g.relations();
  tailed.n = n + t;
  tailed.powers.resize(n + t);
  tailed.weights.clear();
  if (tailed.gen_names.empty())
    for (unsigned i = 0; i < n; ++i) tailed.gen_names.push_back(g.gen_name(i));
  for (unsigned k = 0; k < t; ++k) tailed.gen_names.push_back("t" + std::to_string(k + 1));
  std::vector<Exponents> images = q.images;
  for (auto& e : images) e.resize(n + t, 0);
  for (unsigned k = 0; k < t; ++k) {
    const Letter tail{n + k, 1};
    const auto& s = slots[k];
    if (s.kind == Definition::Kind::image) images[s.a][n + k] = 1;
    if (s.kind == Definition::Kind::power) tailed.powers[s.a].push_back(tail);
    if (s.kind == Definition::Kind::commutator) tailed.comms[{s.a, s.b}].push_back(tail);
  }
  PcGroup cover = make_group(tailed);

  Echelon ech(p, t);
  auto add_relation = [&](const Exponents& lhs, const Exponents& rhs) {
    for (unsigned i = 0; i < n; ++i)
      if (lhs[i] != rhs[i]) throw std::logic_error("extend_one_class: quotient presentation is inconsistent");
    std::vector<unsigned> v(t);
    bool zero = true;
    for (unsigned k = 0; k < t; ++k) {
      v[k] = (lhs[n + k] + p - rhs[n + k]) % p;
      if (v[k]) zero = false;
    }
    if (!zero) ech.insert(std::move(v));
  };
  for (const auto& fail : cover->consistency_failures(false)) add_relation(fail.lhs, fail.rhs);
  const Exponents id = cover->identity();
  for (const auto& r : f.relators) add_relation(lift_with(*cover, images, r), id);
  ech.reduce();

  std::vector<int> new_index(t, -1);
  unsigned s = 0;
  for (unsigned k = 0; k < t; ++k)
    if (!ech.is_pivot(k)) new_index[k] = static_cast<int>(n + s++);
  if (s == 0) return std::nullopt;

  // Tail k as a word in the surviving tails.
  auto tail_word = [&](unsigned k) {
    Word w;
    if (new_index[k] >= 0) {
      w.push_back({static_cast<std::uint32_t>(new_index[k]), 1});
      return w;
    }
    const auto& row = ech.row_for(k);
    for (unsigned c = 0; c < t; ++c)
      if (new_index[c] >= 0 && row[c]) w.push_back({static_cast<std::uint32_t>(new_index[c]), (p - row[c]) % p});
    return w;
  };

  PcRelations rel = g.relations();
  rel.n = n + s;
  rel.powers.resize(n + s);
  rel.gen_names.resize(n);
  for (unsigned i = 0; i < n; ++i) rel.gen_names[i] = g.gen_name(i);
  rel.weights = q.weights;
  PcQuotient out;
  out.source = q.source;
  out.cls = q.cls + 1;
  out.weights = q.weights;
  out.definitions = q.definitions;
  out.images = q.images;
  for (auto& e : out.images) e.resize(n + s, 0);
  for (unsigned k = 0; k < t; ++k) {
    const Word w = tail_word(k);
    const auto& sl = slots[k];
    if (sl.kind == Definition::Kind::image) {
      for (const auto& l : w) out.images[sl.a][l.gen] = static_cast<Exp>(l.exp);
    } else if (sl.kind == Definition::Kind::power) {
      rel.powers[sl.a].insert(rel.powers[sl.a].end(), w.begin(), w.end());
    } else if (!w.empty()) {
      auto& c = rel.comms[{sl.a, sl.b}];
      c.insert(c.end(), w.begin(), w.end());
    }
    if (new_index[k] >= 0) {
      out.definitions.push_back(sl);
      rel.gen_names.push_back("t" + std::to_string(out.cls) + "_" + std::to_string(new_index[k] - n + 1));
      rel.weights.push_back(out.cls);
      out.weights.push_back(out.cls);
    }
  }
  rel.name = "class-" + std::to_string(out.cls) + " quotient";
  out.group = make_group(std::move(rel));
  if (!out.group->is_consistent()) throw std::logic_error("extend_one_class: produced an inconsistent presentation");
  return out;
}

PcQuotient p_quotient(std::shared_ptr<const FpPresentation> f, unsigned p, unsigned max_class) {
  if (max_class < 1) throw std::invalid_argument("p_quotient: max_class must be at least 1");
  PcQuotient q = class1_quotient(std::move(f), p);
  if (q.group->size() == 0) {
    q.stable = true;
    return q;
  }
  while (q.cls < max_class) {
    auto next = extend_one_class(q);
    if (!next) {
      q.stable = true;
      return q;
    }
    q = std::move(*next);
  }
  q.stable = !extend_one_class(q).has_value();
  return q;
}

Exponents lift_word(const PcQuotient& q, const FpWord& w) { return lift_with(*q.group, q.images, w); }

}  // namespace b0lab
