#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace typesemi {

  enum class ErrorCode {
    dimension_mismatch,
    step_not_applicable,
    invalid_pair,
    noncommuting_matrices,
    row_zero,
    bad_reference,
    overlapping_cylinders,
    noncomposable_word,
    group_too_large,
    too_large,
    zero_target,
    invalid_input,
    internal
  };

  char const* error_code_name(ErrorCode code) noexcept;

  // Every failure raised by the library carries one of the codes above; the
  // C API maps them onto status values and the CLI onto exit codes.
  class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, std::string const& what)
        : std::runtime_error(what), _code(code) {}

    ErrorCode code() const noexcept {
      return _code;
    }

   private:
    ErrorCode _code;
  };

  // STEP_NOT_APPLICABLE carries the failing step index.
  class StepNotApplicable : public Error {
   public:
    explicit StepNotApplicable(std::size_t index)
        : Error(ErrorCode::step_not_applicable,
                "rewrite step " + std::to_string(index) + " is not applicable"),
          _index(index) {}

    std::size_t index() const noexcept {
      return _index;
    }

   private:
    std::size_t _index;
  };

}  // namespace typesemi
