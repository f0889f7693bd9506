#include "b0lab/runner.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "json.hpp"

#include "b0lab/catalog.hpp"
#include "b0lab/cohomology.hpp"
#include "b0lab/multiplier.hpp"

namespace b0lab {

using nlohmann::json;

namespace {

json report_json(const B0Report& r, bool timing) {
  json j{{"name", r.name},
         {"p", r.p},
         {"n", r.n},
         {"method", to_string(r.method)},
         {"b0_invariants", r.invariants},
         {"multiplier_invariants", r.multiplier_invariants},
         {"multiplier_order", r.multiplier_order},
         {"m0_order", r.m0_order},
         {"certificates", r.certificates},
         {"authoritative", r.authoritative},
         {"status", r.status}};
  if (timing) j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

B0Report report_from_json(const json& j) {
  B0Report r;
  r.name = j.at("name").get<std::string>();
  r.p = j.at("p").get<unsigned>();
  r.n = j.at("n").get<unsigned>();
  r.method = method_from_string(j.at("method").get<std::string>());
  r.invariants = j.at("b0_invariants").get<std::vector<std::uint64_t>>();
  r.multiplier_invariants = j.at("multiplier_invariants").get<std::vector<std::uint64_t>>();
  r.multiplier_order = j.at("multiplier_order").get<std::uint64_t>();
  r.m0_order = j.at("m0_order").get<std::uint64_t>();
  r.certificates = j.at("certificates").get<std::vector<std::string>>();
  r.authoritative = j.at("authoritative").get<bool>();
  r.status = j.at("status").get<std::string>();
  r.elapsed_ms = j.value("elapsed_ms", 0.0);
  return r;
}

std::string verdict(const B0Report& r) {
  if (r.method == Method::criterion && r.status == "inconclusive") return "inconclusive";
  return r.nonzero() ? "nonzero" : "zero";
}

}  // namespace

void RunConfig::validate() const {
  if (p < 2) throw std::invalid_argument("--p must be a prime");
  for (unsigned d = 2; d * d <= p; ++d)
    if (p % d == 0) throw std::invalid_argument("--p must be a prime");
  if (method != "tensor" && method != "oracle" && method != "criteria" && method != "all")
    throw std::invalid_argument("--method must be tensor, oracle, criteria or all");
  if (format != "text" && format != "json" && format != "csv") throw std::invalid_argument("--format must be text, json or csv");
  if (jobs == 0) throw std::invalid_argument("--jobs must be positive");
}

std::string presentation_hash(const PcPresentation& g) {
  std::istringstream in(serialize_pcp(g));
  std::uint64_t h = 0xcbf29ce484222325ULL;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("name ", 0) == 0) continue;
    for (unsigned char c : line + "\n") {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

std::string to_json_line(const ResultRecord& r) {
  json j{{"hash", r.hash}, {"group", r.name}, {"version", r.version}, {"report", report_json(r.report, true)}};
  return j.dump();
}

std::optional<ResultRecord> parse_record_line(const std::string& line) {
  try {
    const json j = json::parse(line);
    ResultRecord r;
    r.hash = j.at("hash").get<std::string>();
    r.name = j.at("group").get<std::string>();
    r.version = j.at("version").get<std::string>();
    r.report = report_from_json(j.at("report"));
    return r;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

ResultCache::ResultCache(std::string path) : path_(std::move(path)) {
  std::ifstream in(path_);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (auto r = parse_record_line(line)) records_.push_back(std::move(*r));
    else warnings_.push_back(path_ + ":" + std::to_string(lineno) + ": skipped unreadable record");
  }
}

std::optional<ResultRecord> ResultCache::find(const std::string& hash, Method method) const {
  std::lock_guard<std::mutex> lock(mutex_);
  for (auto it = records_.rbegin(); it != records_.rend(); ++it)
    if (it->hash == hash && it->report.method == method && it->report.authoritative) return *it;
  return std::nullopt;
}

void ResultCache::append(const ResultRecord& r) {
  std::lock_guard<std::mutex> lock(mutex_);
  std::ofstream out(path_, std::ios::app);
  if (!out) throw std::runtime_error("cannot write cache " + path_);
  out << to_json_line(r) << '\n';
  records_.push_back(r);
}

B0Outcome run_b0(const PcGroup& g, const RunConfig& cfg) {
  B0Outcome out;
  TensorOptions topt;
  topt.pairs = cfg.pairs;
  topt.class_cap = cfg.class_cap;
  topt.pair_cap = cfg.pair_cap;
  topt.parallel = cfg.jobs > 1;
  const std::uint64_t cap = cfg.oracle_cap ? cfg.oracle_cap : default_oracle_cap(g->prime());
  if (cfg.method == "tensor") {
    out.reports.push_back(b0_tensor(g, topt));
    if (!out.reports.back().authoritative) throw CapExceeded("pair cap " + std::to_string(cfg.pair_cap) + " reached");
    return out;
  }
  if (cfg.method == "oracle") {
    out.reports.push_back(b0_oracle(g, cap, cfg.pairs));
    return out;
  }
  if (cfg.method == "criteria") {
    out.reports.push_back(b0_criteria(g, cfg.pairs));
    return out;
  }
  const B0Report t = b0_tensor(g, topt);
  if (!t.authoritative) throw CapExceeded("pair cap " + std::to_string(cfg.pair_cap) + " reached");
  out.reports.push_back(t);
  if (g->order() <= cap) {
    const B0Report o = b0_oracle(g, cap, cfg.pairs);
    out.reports.push_back(o);
    if (o.invariants != t.invariants || o.multiplier_invariants != t.multiplier_invariants) {
      out.disagreement = true;
      out.notes.push_back("oracle " + format_invariants(o.invariants) + " / M " + format_invariants(o.multiplier_invariants) +
                          " differs from tensor " + format_invariants(t.invariants) + " / M " +
                          format_invariants(t.multiplier_invariants));
    }
  } else {
    out.notes.push_back("oracle skipped: |G| = " + std::to_string(g->order()) + " exceeds cap " + std::to_string(cap));
  }
  if (g->size() == 5 && g->prime() > 2) {
    const B0Report c = b0_criteria(g, cfg.pairs);
    out.reports.push_back(c);
    if (c.status != "inconclusive" && c.nonzero() != t.nonzero()) {
      out.disagreement = true;
      out.notes.push_back("criteria say " + c.status + ", tensor says " + verdict(t));
    }
  } else {
    out.notes.push_back("criteria skipped: they cover order p^5 with p odd");
  }
  return out;
}

std::string csv_header() { return "name,p,n,method,b0_invariants,|M|,|M0|,elapsed_ms"; }

std::string csv_row(const B0Report& r) {
  auto quote = [](const std::string& s) {
    if (s.find_first_of(",\"") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  };
  char ms[32];
  std::snprintf(ms, sizeof ms, "%.1f", r.elapsed_ms);
  std::string b0 = r.method == Method::criterion ? r.status : format_invariants(r.invariants);
  return quote(r.name) + "," + std::to_string(r.p) + "," + std::to_string(r.n) + "," + to_string(r.method) + "," +
         quote(b0) + "," + std::to_string(r.multiplier_order) + "," + std::to_string(r.m0_order) + "," + ms;
}

std::string report_text(const B0Report& r) {
  std::ostringstream os;
  os << r.name << " (p=" << r.p << ", n=" << r.n << ") " << to_string(r.method) << ": B0 ";
  if (r.method == Method::criterion) {
    os << r.status;
  } else {
    os << (r.invariants.empty() ? "= 0" : "= " + format_invariants(r.invariants)) << ", M = " << format_invariants(r.multiplier_invariants)
       << ", |M0| = " << r.m0_order;
  }
  if (!r.authoritative) os << " [not authoritative: " << r.status << "]";
  char ms[32];
  std::snprintf(ms, sizeof ms, "%.1f", r.elapsed_ms);
  os << " (" << ms << " ms)";
  return os.str();
}

std::string emit_report(const std::vector<ResultRecord>& records, const std::string& format) {
  std::map<std::pair<std::string, Method>, std::size_t> last;
  for (std::size_t i = 0; i < records.size(); ++i) last[{records[i].hash, records[i].report.method}] = i;
  std::vector<const ResultRecord*> keep;
  for (std::size_t i = 0; i < records.size(); ++i)
    if (last[{records[i].hash, records[i].report.method}] == i) keep.push_back(&records[i]);
  std::ostringstream os;
  if (format == "json") {
    json arr = json::array();
    for (const auto* r : keep) arr.push_back({{"hash", r->hash}, {"group", r->name}, {"report", report_json(r->report, false)}});
    os << arr.dump(2) << '\n';
  } else if (format == "csv") {
    os << csv_header() << '\n';
    for (const auto* r : keep) os << csv_row(r->report) << '\n';
  } else {
    for (const auto* r : keep) os << r->hash << "  " << report_text(r->report) << '\n';
  }
  return os.str();
}

}  // namespace b0lab
