#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace tacfit {

/// Base class for every validation and domain error raised by the library.
///
/// `kind()` is a stable machine-readable name ("OutOfRange", "ShapeMismatch",
/// ...) that the CLI and HTTP layers forward verbatim. `field()` names the
/// offending input when there is one ("team.A3", "state.time_remaining").
class Error : public std::runtime_error {
 public:
  Error(std::string kind, std::string field, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)), field_(std::move(field)) {}

  const std::string& kind() const noexcept { return kind_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::string kind_;
  std::string field_;
};

#define TACFIT_DEFINE_ERROR(Name)                                      \
  class Name : public Error {                                          \
   public:                                                             \
    explicit Name(const std::string& message, std::string field = {}) \
        : Error(#Name, std::move(field), message) {}                   \
  }

TACFIT_DEFINE_ERROR(OutOfRange);
TACFIT_DEFINE_ERROR(WrongArity);
TACFIT_DEFINE_ERROR(UnknownLevel);
TACFIT_DEFINE_ERROR(EmptyMask);
TACFIT_DEFINE_ERROR(InactiveAttribute);
TACFIT_DEFINE_ERROR(InvalidArgument);

TACFIT_DEFINE_ERROR(DegenerateBenchmark);
TACFIT_DEFINE_ERROR(WeightSumViolation);
TACFIT_DEFINE_ERROR(MissingLeaf);
TACFIT_DEFINE_ERROR(MissingDirect);
TACFIT_DEFINE_ERROR(InvalidTree);

TACFIT_DEFINE_ERROR(ParseError);
TACFIT_DEFINE_ERROR(DuplicateName);
TACFIT_DEFINE_ERROR(NegativeSigma);

TACFIT_DEFINE_ERROR(ShapeMismatch);
TACFIT_DEFINE_ERROR(DegenerateMultipliers);
TACFIT_DEFINE_ERROR(EmptyLibrary);
TACFIT_DEFINE_ERROR(MissingOpponent);
TACFIT_DEFINE_ERROR(IoFailure);
TACFIT_DEFINE_ERROR(NotFound);

#undef TACFIT_DEFINE_ERROR

}  // namespace tacfit
