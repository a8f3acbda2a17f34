#pragma once

#include <stdexcept>
#include <string>

namespace abcmeta {

// All failures surface as subclasses of Error. kind() is a stable token
// suitable for machine-readable reports; what() is "<kind>: <detail>".
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& detail)
        : std::runtime_error(kind + ": " + detail), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define ABCMETA_DEFINE_ERROR(Name)                                      \
    class Name : public Error {                                         \
    public:                                                             \
        explicit Name(const std::string& detail) : Error(#Name, detail) {} \
    }

ABCMETA_DEFINE_ERROR(OrderingViolation);
ABCMETA_DEFINE_ERROR(UnsupportedPattern);
ABCMETA_DEFINE_ERROR(BadSampleSize);
ABCMETA_DEFINE_ERROR(NonPositiveSupport);
ABCMETA_DEFINE_ERROR(InvalidParam);
ABCMETA_DEFINE_ERROR(EmptySample);
ABCMETA_DEFINE_ERROR(TooFewPoints);
ABCMETA_DEFINE_ERROR(OutOfBounds);
ABCMETA_DEFINE_ERROR(ShiftInsufficient);
ABCMETA_DEFINE_ERROR(InsufficientCandidates);
ABCMETA_DEFINE_ERROR(BadConfig);
ABCMETA_DEFINE_ERROR(ParseError);
ABCMETA_DEFINE_ERROR(Cancelled);

#undef ABCMETA_DEFINE_ERROR

}  // namespace abcmeta
