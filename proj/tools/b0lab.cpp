// b0lab: Bogomolov multipliers of finite p-groups from the command line.
//
// Exit codes: 0 success, 1 cap exceeded, 2 invalid input, 3 verification or
// agreement mismatch.

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <thread>

#include <omp.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "b0lab/catalog.hpp"
#include "b0lab/isoclinism.hpp"
#include "b0lab/multiplier.hpp"
#include "b0lab/runner.hpp"

namespace fs = std::filesystem;
using namespace b0lab;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kCap = 1, kInvalid = 2, kMismatch = 3 };

struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

PcGroup resolve(const std::string& spec, unsigned p) {
  std::error_code ec;
  if (fs::is_regular_file(spec, ec)) {
    try {
      return load_pcp(spec);
    } catch (const PcpSyntaxError& e) {
      throw InvalidInput(spec + ": " + e.what());
    } catch (const InconsistentPresentation& e) {
      throw InvalidInput(spec + ": " + e.what());
    }
  }
  if (spec.find(':') == std::string::npos) throw InvalidInput("no such file or catalog label: " + spec);
  try {
    return catalog_lookup(spec, p).group;
  } catch (const std::exception& e) {
    throw InvalidInput(e.what());
  }
}

unsigned trailing_number(const std::string& s) {
  std::size_t i = s.size();
  while (i > 0 && std::isdigit(static_cast<unsigned char>(s[i - 1]))) --i;
  return i < s.size() ? static_cast<unsigned>(std::stoul(s.substr(i))) : 0;
}

/// Every .pcp file under the given paths, in natural order per directory.
std::vector<fs::path> pcp_files(const std::vector<std::string>& paths) {
  std::vector<fs::path> out;
  for (const auto& p : paths) {
    if (fs::is_directory(p)) {
      std::vector<fs::path> dir;
      for (const auto& e : fs::directory_iterator(p))
        if (e.path().extension() == ".pcp") dir.push_back(e.path());
      std::sort(dir.begin(), dir.end(), [](const fs::path& a, const fs::path& b) {
        const auto sa = a.stem().string(), sb = b.stem().string();
        const unsigned na = trailing_number(sa), nb = trailing_number(sb);
        return na != nb ? na < nb : sa < sb;
      });
      out.insert(out.end(), dir.begin(), dir.end());
    } else if (fs::is_regular_file(p)) {
      out.emplace_back(p);
    } else {
      throw InvalidInput("no such file or directory: " + p);
    }
  }
  return out;
}

/// Runs fn(i) for i < count on up to `jobs` threads.
template <class Fn>
void fan_out(std::size_t count, unsigned jobs, Fn fn) {
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  auto worker = [&] {
    for (std::size_t i; (i = next++) < count;) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::min<std::size_t>(jobs, count); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

json fingerprint_json(const PcPresentation& g) {
  const auto f = family_fingerprint(g);
  return {{"name", g.name()},
          {"p", g.prime()},
          {"n", g.size()},
          {"order", g.order()},
          {"center", f.center},
          {"derived", f.derived},
          {"exponent", f.exponent},
          {"abelianization", f.abelianization},
          {"nilpotency_class", nilpotency_class(g)},
          {"fingerprint", f.to_string()}};
}

int cmd_group_info(const std::string& spec, const RunConfig& cfg) {
  const auto g = resolve(spec, cfg.p);
  const json j = fingerprint_json(*g);
  if (cfg.format == "json") {
    std::cout << j.dump(2) << '\n';
  } else if (cfg.format == "csv") {
    std::cout << "name,p,n,order,center,derived,exponent,abelianization,nilpotency_class\n"
              << g->name() << ',' << g->prime() << ',' << g->size() << ',' << g->order() << ',' << j["center"] << ','
              << j["derived"] << ',' << j["exponent"] << ",\"" << format_invariants(j["abelianization"]) << "\","
              << j["nilpotency_class"] << '\n';
  } else {
    std::cout << "group          " << g->name() << "\norder          " << g->order() << " = " << g->prime() << "^" << g->size()
              << "\ncenter         " << j["center"] << "\nderived        " << j["derived"] << "\nexponent       "
              << j["exponent"] << "\nabelianization " << format_invariants(j["abelianization"]) << "\nclass          "
              << j["nilpotency_class"] << "\nfingerprint    " << j["fingerprint"].get<std::string>() << '\n';
  }
  return kOk;
}

int cmd_b0(const std::string& spec, const RunConfig& cfg) {
  const auto g = resolve(spec, cfg.p);
  std::optional<ResultCache> cache;
  if (!cfg.cache.empty()) {
    cache.emplace(cfg.cache);
    for (const auto& w : cache->warnings()) std::cerr << "warning: " << w << '\n';
  }
  const std::string hash = presentation_hash(*g);
  B0Outcome out;
  bool cached = false;
  if (cache && cfg.method != "all") {
    if (auto r = cache->find(hash, method_from_string(cfg.method))) {
      out.reports.push_back(r->report);
      out.notes.push_back("from cache " + cfg.cache);
      cached = true;
    }
  }
  if (!cached) {
    out = run_b0(g, cfg);
    if (cache)
      for (const auto& r : out.reports)
        if (r.authoritative) cache->append({hash, g->name(), r, kToolVersion});
  }
  if (cfg.format == "json") {
    json reps = json::array();
    for (const auto& r : out.reports) reps.push_back(json::parse(to_json_line({hash, g->name(), r, kToolVersion}))["report"]);
    std::cout << json{{"group", g->name()}, {"hash", hash}, {"reports", reps}, {"notes", out.notes},
                      {"agree", !out.disagreement}}
                     .dump(2)
              << '\n';
  } else if (cfg.format == "csv") {
    std::cout << csv_header() << '\n';
    for (const auto& r : out.reports) std::cout << csv_row(r) << '\n';
  } else {
    for (const auto& r : out.reports) {
      std::cout << report_text(r) << '\n';
      for (const auto& c : r.certificates) std::cout << "  " << c << '\n';
    }
    for (const auto& n : out.notes) std::cout << "note: " << n << '\n';
    if (cfg.method == "all") std::cout << (out.disagreement ? "methods DISAGREE" : "methods agree") << '\n';
  }
  return out.disagreement ? kMismatch : kOk;
}

int cmd_verify(const RunConfig& cfg, const std::vector<std::string>& corpus_paths, bool phi10_only) {
  if (cfg.p < 3) throw InvalidInput("verify: p must be an odd prime");
  std::vector<CorpusEntry> corpus;
  if (corpus_paths.empty()) {
    for (auto& e : catalog(cfg.p))
      if (!phi10_only || e.id.family == 10) corpus.push_back({e.id.label(), e.group, e.id.family == 10});
  } else {
    for (const auto& f : pcp_files(corpus_paths)) {
      const auto g = resolve(f.string(), cfg.p);
      if (g->prime() != cfg.p || g->size() != 5)
        throw InvalidInput("verify: " + f.string() + " is not of order " + std::to_string(cfg.p) + "^5");
      corpus.push_back({f.stem().string(), g, std::nullopt});
    }
    if (phi10_only) {
      std::vector<CorpusEntry> keep;
      for (auto& e : corpus)
        if (in_phi10(e.group)) keep.push_back({e.label, e.group, true});
      corpus = std::move(keep);
    }
  }
  std::optional<ResultCache> cache;
  if (!cfg.cache.empty()) cache.emplace(cfg.cache);
  TensorOptions opt;
  opt.pairs = cfg.pairs;
  opt.class_cap = cfg.class_cap;
  opt.pair_cap = cfg.pair_cap;
  opt.parallel = cfg.jobs > 1 && corpus.size() == 1;
  std::vector<VerificationRow> rows(corpus.size());
  fan_out(corpus.size(), cfg.jobs, [&](std::size_t i) {
    const auto& e = corpus[i];
    const std::string hash = presentation_hash(*e.group);
    if (cache) {
      if (auto r = cache->find(hash, Method::tensor)) {
        VerificationRow row;
        row.label = e.label;
        row.phi10 = e.phi10 ? *e.phi10 : in_phi10(e.group);
        row.report = r->report;
        row.report.name = e.label;
        row.agrees = row.report.nonzero() == row.phi10;
        rows[i] = row;
        return;
      }
    }
    rows[i] = verify_theorem(cfg.p, {e}, opt).rows.front();
    if (cache && rows[i].report.authoritative) cache->append({hash, e.label, rows[i].report, kToolVersion});
  });
  VerificationTable t;
  t.p = cfg.p;
  for (auto& r : rows) {
    if (r.report.nonzero()) ++t.nonzero;
    if (!r.agrees) t.offenders.push_back(r.label);
    t.rows.push_back(std::move(r));
  }
  if (cfg.format == "json") {
    json arr = json::array();
    for (const auto& r : t.rows)
      arr.push_back({{"label", r.label}, {"phi10", r.phi10}, {"b0_invariants", r.report.invariants},
                     {"multiplier_invariants", r.report.multiplier_invariants}, {"agrees", r.agrees}});
    std::cout << json{{"p", t.p}, {"rows", arr}, {"nonzero", t.nonzero}, {"offenders", t.offenders}, {"ok", t.ok()}}.dump(2)
              << '\n';
  } else if (cfg.format == "csv") {
    std::cout << csv_header() << ",phi10,agrees\n";
    for (const auto& r : t.rows) std::cout << csv_row(r.report) << ',' << r.phi10 << ',' << r.agrees << '\n';
  } else {
    for (const auto& r : t.rows) {
      char line[256];
      std::snprintf(line, sizeof line, "%-16s %-6s B0=%-10s M=%-16s %8.1f ms %s", r.label.c_str(), r.phi10 ? "phi10" : "-",
                    format_invariants(r.report.invariants).c_str(), format_invariants(r.report.multiplier_invariants).c_str(),
                    r.report.elapsed_ms, r.agrees ? "ok" : "MISMATCH");
      std::cout << line << '\n';
    }
    std::cout << "p=" << t.p << ": " << t.rows.size() << " groups, " << t.nonzero << " with B0 != 0; ";
    if (t.ok()) {
      std::cout << "B0 != 0 exactly on the Phi10 groups\n";
    } else {
      std::cout << "offenders:";
      for (const auto& o : t.offenders) std::cout << ' ' << o;
      std::cout << '\n';
    }
  }
  return t.ok() ? kOk : kMismatch;
}

int cmd_isoclinism(const std::string& a, const std::string& b, const RunConfig& cfg) {
  const auto g1 = resolve(a, cfg.p), g2 = resolve(b, cfg.p);
  const auto r = is_isoclinic(g1, g2, cfg.search_budget);
  bool valid = false;
  if (r.witness) valid = validate_witness(commutator_pairing(g1), commutator_pairing(g2), *r.witness);
  if (cfg.format == "json") {
    std::cout << json{{"a", g1->name()}, {"b", g2->name()}, {"isoclinic", r.isoclinic},
                      {"witness_validated", valid}, {"candidates_tried", r.candidates_tried}}
                     .dump(2)
              << '\n';
  } else {
    std::cout << g1->name() << " and " << g2->name() << (r.isoclinic ? " are isoclinic" : " are not isoclinic");
    if (r.isoclinic) std::cout << " (witness " << (valid ? "validated" : "INVALID") << ")";
    std::cout << "; " << r.candidates_tried << " candidates tried\n";
  }
  return r.isoclinic && !valid ? kMismatch : kOk;
}

int cmd_catalog_list(const RunConfig& cfg) {
  if (cfg.p < 3) throw InvalidInput("catalog: p must be an odd prime");
  const auto counts = family_counts(cfg.p);
  const auto cat = catalog(cfg.p);
  if (cfg.format == "json") {
    json fam = json::array();
    for (unsigned f = 1; f <= 10; ++f) {
      json variants = json::array();
      for (const auto& e : cat)
        if (e.id.family == f) variants.push_back(e.id.label());
      fam.push_back({{"family", f}, {"groups", counts.per_family[f - 1]}, {"built_in", variants}});
    }
    std::cout << json{{"p", cfg.p}, {"families", fam}, {"phi10", counts.phi10}, {"total", counts.total},
                      {"closed_form_total", counts.bagnera}}
                     .dump(2)
              << '\n';
    return kOk;
  }
  std::cout << "groups of order " << cfg.p << "^5 by isoclinism family\n";
  for (unsigned f = 1; f <= 10; ++f) {
    std::cout << "  Phi" << f << (f < 10 ? " " : "") << "  " << std::setw(3) << counts.per_family[f - 1] << " groups";
    std::string built;
    for (const auto& e : cat)
      if (e.id.family == f) built += " " + e.id.label();
    if (!built.empty()) std::cout << "  built-in:" << built;
    std::cout << '\n';
  }
  std::cout << "  total  " << counts.total << " (closed form " << counts.bagnera << "), Phi10: " << counts.phi10 << '\n';
  return kOk;
}

int cmd_ingest(const std::vector<std::string>& paths, const RunConfig& cfg) {
  const auto files = pcp_files(paths);
  std::vector<PcGroup> groups;
  int status = kOk;
  for (const auto& f : files) {
    try {
      groups.push_back(resolve(f.string(), cfg.p));
    } catch (const InvalidInput& e) {
      std::cerr << "error: " << e.what() << '\n';
      status = kInvalid;
    }
  }
  std::optional<ResultCache> cache;
  if (!cfg.cache.empty()) cache.emplace(cfg.cache);
  RunConfig one = cfg;
  one.jobs = 1;
  std::vector<B0Outcome> outs(groups.size());
  std::vector<int> codes(groups.size(), kOk);
  fan_out(groups.size(), cfg.jobs, [&](std::size_t i) {
    const std::string hash = presentation_hash(*groups[i]);
    if (cache && cfg.method != "all")
      if (auto r = cache->find(hash, method_from_string(cfg.method))) {
        outs[i].reports.push_back(r->report);
        return;
      }
    try {
      outs[i] = run_b0(groups[i], one);
    } catch (const CapExceeded& e) {
      outs[i].notes.push_back(e.what());
      codes[i] = kCap;
      return;
    }
    if (outs[i].disagreement) codes[i] = kMismatch;
    if (cache)
      for (const auto& r : outs[i].reports) cache->append({hash, groups[i]->name(), r, kToolVersion});
  });
  if (cfg.format == "csv") std::cout << csv_header() << '\n';
  for (std::size_t i = 0; i < groups.size(); ++i) {
    for (const auto& r : outs[i].reports) std::cout << (cfg.format == "csv" ? csv_row(r) : report_text(r)) << '\n';
    for (const auto& n : outs[i].notes) std::cerr << groups[i]->name() << ": " << n << '\n';
    status = std::max(status, codes[i]);
  }
  return status;
}

int cmd_report(const RunConfig& cfg) {
  if (cfg.cache.empty()) throw InvalidInput("report: --cache is required");
  const ResultCache cache(cfg.cache);
  for (const auto& w : cache.warnings()) std::cerr << "warning: " << w << '\n';
  std::cout << emit_report(cache.records(), cfg.format);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"b0lab: Bogomolov multipliers of finite p-groups"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  std::string pairs = "full";
  app.add_option("--p", cfg.p, "prime")->envname("B0LAB_P");
  app.add_option("--method", cfg.method, "tensor|oracle|criteria|all")->envname("B0LAB_METHOD");
  app.add_option("--oracle-cap", cfg.oracle_cap, "largest |G| for the cohomology oracle")->envname("B0LAB_ORACLE_CAP");
  app.add_option("--class-cap", cfg.class_cap, "class cap for tau(G)")->envname("B0LAB_CLASS_CAP");
  app.add_option("--pair-cap", cfg.pair_cap, "stop after this many commuting pairs")->envname("B0LAB_PAIR_CAP");
  app.add_option("--search-budget", cfg.search_budget, "isoclinism candidates")->envname("B0LAB_SEARCH_BUDGET");
  app.add_option("--pairs", pairs, "full|bicyclic")->envname("B0LAB_PAIRS");
  app.add_option("--jobs", cfg.jobs, "worker threads")->envname("B0LAB_JOBS");
  app.add_option("--cache", cfg.cache, "JSON-lines result cache")->envname("B0LAB_CACHE");
  app.add_option("--format", cfg.format, "text|json|csv")->envname("B0LAB_FORMAT");

  auto* group = app.add_subcommand("group", "group information");
  group->require_subcommand(1);
  std::string info_spec;
  auto* info = group->add_subcommand("info", "order, center, derived subgroup, exponent, abelianization");
  info->add_option("spec", info_spec, "catalog label (e.g. phi10:28) or pcp file")->required();

  std::string b0_spec;
  auto* b0 = app.add_subcommand("b0", "Bogomolov multiplier");
  b0->add_option("spec", b0_spec, "catalog label or pcp file")->required();

  std::vector<std::string> corpus;
  bool phi10_only = false;
  auto* verify = app.add_subcommand("verify", "B0 != 0 exactly on Phi10 among groups of order p^5");
  verify->add_option("--corpus", corpus, "pcp files or directories (default: built-in catalog)");
  verify->add_flag("--phi10-only", phi10_only, "restrict to the Phi10 groups");

  std::string iso_a, iso_b;
  auto* iso = app.add_subcommand("isoclinism", "isoclinism test with a validated witness");
  iso->add_option("a", iso_a)->required();
  iso->add_option("b", iso_b)->required();

  auto* cat = app.add_subcommand("catalog", "built-in groups");
  cat->require_subcommand(1);
  auto* list = cat->add_subcommand("list", "families, counts and built-in variants");

  std::vector<std::string> ingest_paths;
  auto* ingest = app.add_subcommand("ingest", "compute B0 for pcp files or directories");
  ingest->add_option("paths", ingest_paths)->required();

  auto* report = app.add_subcommand("report", "emit the cache as text, json or csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (pairs == "full") cfg.pairs = PairMode::full;
    else if (pairs == "bicyclic") cfg.pairs = PairMode::bicyclic;
    else throw std::invalid_argument("--pairs must be full or bicyclic");
    cfg.validate();
    omp_set_num_threads(static_cast<int>(cfg.jobs));
    if (info->parsed()) return cmd_group_info(info_spec, cfg);
    if (b0->parsed()) return cmd_b0(b0_spec, cfg);
    if (verify->parsed()) return cmd_verify(cfg, corpus, phi10_only);
    if (iso->parsed()) return cmd_isoclinism(iso_a, iso_b, cfg);
    if (list->parsed()) return cmd_catalog_list(cfg);
    if (ingest->parsed()) return cmd_ingest(ingest_paths, cfg);
    if (report->parsed()) return cmd_report(cfg);
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << '\n';
    return kCap;
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kInvalid;
  } catch (const GuardFailure& e) {
    std::cerr << "internal cross-check failed: " << e.what() << '\n';
    return kMismatch;
  }
  return kInvalid;
}
