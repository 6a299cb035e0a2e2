#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tame {

/// Base class for every precondition failure raised by the analysis modules.
/// The CLI maps these to exit code 2; anything else is an internal failure.
class AnalysisError : public std::runtime_error {
public:
    AnalysisError(std::string kind, const std::string& detail)
        : std::runtime_error(kind + ": " + detail), kind_(std::move(kind)), detail_(detail) {}

    const std::string& kind() const noexcept { return kind_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    std::string kind_;
    std::string detail_;
};

#define TAME_DEFINE_ERROR(Name)                                                  \
    class Name : public AnalysisError {                                          \
    public:                                                                      \
        explicit Name(const std::string& detail) : AnalysisError(#Name, detail) {} \
    };

TAME_DEFINE_ERROR(DomainError)
TAME_DEFINE_ERROR(UndefinedError)
TAME_DEFINE_ERROR(SuitabilityError)
TAME_DEFINE_ERROR(EmptyWindowError)
TAME_DEFINE_ERROR(AffineInputError)
TAME_DEFINE_ERROR(MonotonicityError)
TAME_DEFINE_ERROR(NotInFError)
TAME_DEFINE_ERROR(RangeError)
TAME_DEFINE_ERROR(PreconditionError)
TAME_DEFINE_ERROR(AccumulationError)
TAME_DEFINE_ERROR(ScaleError)
TAME_DEFINE_ERROR(NonPositiveError)
TAME_DEFINE_ERROR(PrecisionError)
TAME_DEFINE_ERROR(NotAPowerError)
TAME_DEFINE_ERROR(SampleError)
TAME_DEFINE_ERROR(InvalidArgument)

#undef TAME_DEFINE_ERROR

/// Malformed function spec or digit word. `position` is a byte offset into the input.
class ParseError : public AnalysisError {
public:
    ParseError(std::size_t position, const std::string& reason)
        : AnalysisError("ParseError", "at " + std::to_string(position) + ": " + reason),
          position_(position), reason_(reason) {}

    std::size_t position() const noexcept { return position_; }
    const std::string& reason() const noexcept { return reason_; }

private:
    std::size_t position_;
    std::string reason_;
};

}  // namespace tame
