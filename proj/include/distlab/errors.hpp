#pragma once

#include <stdexcept>
#include <string>

namespace distlab {

class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

#define DISTLAB_ERROR(Name)                                                \
    class Name : public Error {                                            \
    public:                                                                \
        explicit Name(const std::string& what) : Error(#Name, what) {}     \
    };

DISTLAB_ERROR(ConfigError)
DISTLAB_ERROR(NoDescent)
DISTLAB_ERROR(NotASubfield)
DISTLAB_ERROR(NotNonCuspidal)
DISTLAB_ERROR(NotRegular)
DISTLAB_ERROR(SizeCap)
DISTLAB_ERROR(IntegralityViolation)
DISTLAB_ERROR(NormalizationFailure)
DISTLAB_ERROR(CentralCharacterObstruction)
DISTLAB_ERROR(InvariantViolation)

#undef DISTLAB_ERROR

}  // namespace distlab
