#include "pjlab/boolfn.hpp"

#include <numeric>

namespace pjlab {

void validate_builtin(const BuiltinSpec& spec, int n, bool binary) {
  const std::string& name = spec.name;
  bool order_free = name == "const0" || name == "const1";
  if (!order_free)
    require(binary, Errc::AlphabetNotBinary, "builtin '" + name + "' needs binary alphabets");
  if (name == "dictator") {
    require(spec.param >= 0 && spec.param < n, Errc::UnknownBuiltin,
            "dictator coordinate out of range");
  } else if (name == "threshold") {
    require(spec.param >= 0 && spec.param <= n + 1, Errc::UnknownBuiltin,
            "threshold level out of range");
  } else if (name == "tribes") {
    require(spec.param >= 1 && n % spec.param == 0, Errc::UnknownBuiltin,
            "tribes width must divide n");
  } else if (name == "parity") {
    require(spec.param == 0 || spec.param == 1, Errc::UnknownBuiltin,
            "parity target must be 0 or 1");
  } else if (name != "const0" && name != "const1" && name != "or" && name != "and" &&
             name != "majority") {
    fail(Errc::UnknownBuiltin, "no builtin named '" + name + "'");
  }
}

int eval_builtin(const BuiltinSpec& spec, const Point& x) {
  const std::string& name = spec.name;
  if (name == "const0") return 0;
  if (name == "const1") return 1;
  if (name == "dictator") return x[spec.param];
  int ones = 0;
  for (auto v : x) ones += v;
  int n = static_cast<int>(x.size());
  if (name == "or") return ones > 0;
  if (name == "and") return ones == n;
  if (name == "parity") return (ones % 2) == spec.param;
  if (name == "majority") return 2 * ones > n;
  if (name == "threshold") return ones >= spec.param;
  if (name == "tribes") {
    int w = spec.param;
    for (int start = 0; start < n; start += w) {
      bool all = true;
      for (int i = start; i < start + w; ++i) all = all && x[i] == 1;
      if (all) return 1;
    }
    return 0;
  }
  fail(Errc::UnknownBuiltin, "no builtin named '" + name + "'");
}

}  // namespace pjlab
