// Results shared by the tensor, oracle and criterion methods.

#ifndef B0LAB_REPORT_HPP
#define B0LAB_REPORT_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace b0lab {

/// A size or budget limit was hit; the computation gave no verdict.
class CapExceeded : public std::runtime_error {
 public:
  explicit CapExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

/// An internal cross-check failed; the result must not be reported.
class GuardFailure : public std::logic_error {
 public:
  explicit GuardFailure(const std::string& msg) : std::logic_error(msg) {}
};

enum class Method { tensor, oracle, criterion };
std::string to_string(Method m);
Method method_from_string(const std::string& s);

struct B0Report {
  std::string name;
  unsigned p = 0;
  unsigned n = 0;  // |G| = p^n
  Method method = Method::tensor;
  std::vector<std::uint64_t> invariants;             // of B0
  std::vector<std::uint64_t> multiplier_invariants;  // of M(G)
  std::uint64_t multiplier_order = 1;
  std::uint64_t m0_order = 1;
  std::vector<std::string> certificates;
  double elapsed_ms = 0;
  bool authoritative = true;
  std::string status = "ok";

  /// Criterion runs decide zero/nonzero without invariants; status is then
  /// "nonzero", "zero" or "inconclusive".
  bool nonzero() const { return !invariants.empty() || status == "nonzero"; }
};

std::uint64_t invariants_product(const std::vector<std::uint64_t>& inv);
std::string format_invariants(const std::vector<std::uint64_t>& inv);

}  // namespace b0lab

#endif  // B0LAB_REPORT_HPP
