#include "b0lab/report.hpp"

namespace b0lab {

std::string to_string(Method m) {
  switch (m) {
    case Method::tensor: return "tensor";
    case Method::oracle: return "oracle";
    case Method::criterion: return "criterion";
  }
  return "?";
}

Method method_from_string(const std::string& s) {
  if (s == "tensor") return Method::tensor;
  if (s == "oracle") return Method::oracle;
  if (s == "criterion" || s == "criteria") return Method::criterion;
  throw std::invalid_argument("unknown method: " + s);
}

std::uint64_t invariants_product(const std::vector<std::uint64_t>& inv) {
  std::uint64_t r = 1;
  for (auto q : inv) r *= q;
  return r;
}

std::string format_invariants(const std::vector<std::uint64_t>& inv) {
  std::string s = "[";
  for (std::size_t i = 0; i < inv.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(inv[i]);
  }
  return s + "]";
}

}  // namespace b0lab
