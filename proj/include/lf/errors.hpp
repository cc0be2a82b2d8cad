#pragma once

#include <stdexcept>
#include <string>

namespace lf {

/// Failure categories surfaced by the library. The CLI maps these to exit codes.
enum class errc {
  dimension_mismatch,
  non_square,
  not_symmetric,
  invalid_curve,
  wrong_base_genus,
  not_closed,
  parity_error,
  genus_mismatch,
  budget_exceeded,
  mismatched_report,
  not_minimal,
  inconsistent_input,
  invalid_codomain,
  not_found,
  calibration_failure,
  invalid_input,
};

inline const char* errc_name(errc k) {
  switch (k) {
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::non_square: return "NonSquare";
    case errc::not_symmetric: return "NotSymmetric";
    case errc::invalid_curve: return "InvalidCurve";
    case errc::wrong_base_genus: return "WrongBaseGenus";
    case errc::not_closed: return "NotClosed";
    case errc::parity_error: return "ParityError";
    case errc::genus_mismatch: return "GenusMismatch";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::mismatched_report: return "MismatchedReport";
    case errc::not_minimal: return "NotMinimal";
    case errc::inconsistent_input: return "InconsistentInput";
    case errc::invalid_codomain: return "InvalidCodomain";
    case errc::not_found: return "NotFound";
    case errc::calibration_failure: return "CalibrationFailure";
    case errc::invalid_input: return "InvalidInput";
  }
  return "UnknownError";
}

class error : public std::runtime_error {
 public:
  error(errc kind, const std::string& what)
      : std::runtime_error(std::string(errc_name(kind)) + ": " + what), kind_(kind) {}

  errc kind() const { return kind_; }

 private:
  errc kind_;
};

}  // namespace lf
