#include "pjlab/errors.hpp"

namespace pjlab {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NonPositiveWeight: return "NonPositiveWeight";
    case Errc::WeightsNotNormalized: return "WeightsNotNormalized";
    case Errc::EmptySpace: return "EmptySpace";
    case Errc::SymbolOutOfRange: return "SymbolOutOfRange";
    case Errc::EnumerationCapExceeded: return "EnumerationCapExceeded";
    case Errc::TableLengthMismatch: return "TableLengthMismatch";
    case Errc::NonBooleanValue: return "NonBooleanValue";
    case Errc::UnknownBuiltin: return "UnknownBuiltin";
    case Errc::AlphabetNotBinary: return "AlphabetNotBinary";
    case Errc::SupportMismatch: return "SupportMismatch";
    case Errc::NotIncreasing: return "NotIncreasing";
    case Errc::NotMeasurable: return "NotMeasurable";
    case Errc::ScheduleInfeasible: return "ScheduleInfeasible";
    case Errc::MonotonicityViolated: return "MonotonicityViolated";
    case Errc::NoQualifyingAtom: return "NoQualifyingAtom";
    case Errc::UsageError: return "UsageError";
    case Errc::DomainError: return "DomainError";
  }
  return "Error";
}

}  // namespace pjlab
