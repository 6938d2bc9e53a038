#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pjlab/rational.hpp"

namespace pjlab {

enum class Mode { PBiased, General };

inline const char* mode_name(Mode m) { return m == Mode::PBiased ? "pbiased" : "general"; }
Mode parse_mode(const std::string& s);

// One constant of the schedule. The log2 value is always available; the exact
// rational value is materialized only when it fits the bit budget (the
// unoverridden paper constants never do for realistic inputs).
struct ScheduleField {
  std::string name;
  double log2 = 0;
  std::optional<Rat> exact;
  bool overridden = false;
  bool underflows_double = false;
};

// The constant family (C, k, eps0, eps1, delta, delta0, eps2):
//   eps0   = 1e-3 eps            k      = C / eps0
//   eps1   = 3^(-10k^2) eps0^(10k)
//   pbiased: delta  = 2^(-10^2 k^2)
//   general: delta0 = 2^(-2k),  delta = 2^(-10^3 k^2) eps1^10,  eps2 = delta^(10k)
struct ParameterSchedule {
  Mode mode = Mode::PBiased;
  long long C = 1;
  Rat epsilon;
  std::size_t bit_budget = 1000000;

  ScheduleField eps0, k, eps1, delta, delta0, eps2;

  // exact value of a field, or ScheduleInfeasible when it was not materialized
  const Rat& need(const ScheduleField& f) const;
  bool any_overridden() const;
  std::vector<const ScheduleField*> fields() const;
  const ScheduleField* field(const std::string& name) const;
};

// Valid override keys: eps0, k, eps1, delta, delta0, eps2.
ParameterSchedule make_schedule(Mode mode, long long C, const Rat& epsilon,
                                const std::map<std::string, Rat>& overrides = {},
                                std::size_t bit_budget = 1000000);

std::optional<long long> as_integer(const Rat& q);

}  // namespace pjlab
