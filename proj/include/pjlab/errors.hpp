#pragma once

#include <stdexcept>
#include <string>

namespace pjlab {

enum class Errc {
  NonPositiveWeight,
  WeightsNotNormalized,
  EmptySpace,
  SymbolOutOfRange,
  EnumerationCapExceeded,
  TableLengthMismatch,
  NonBooleanValue,
  UnknownBuiltin,
  AlphabetNotBinary,
  SupportMismatch,
  NotIncreasing,
  NotMeasurable,
  ScheduleInfeasible,
  MonotonicityViolated,
  NoQualifyingAtom,
  UsageError,
  DomainError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

inline void require(bool cond, Errc code, const std::string& msg) {
  if (!cond) fail(code, msg);
}

}  // namespace pjlab
