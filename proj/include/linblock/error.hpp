#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace linblock {

enum class ErrorKind {
    NonPrime,
    ReducibleModulus,
    InvalidModulus,
    ZeroInverse,
    MixedFields,
    NonDivisorDegree,
    BudgetExceeded,
    EqualPoints,
    ZeroVector,
    DimensionMismatch,
    ZeroOnly,
    NotASubline,
    LiftInconsistent,
    NotBlocking,
    NotMember,
    QInB,
    QInH,
    NotCollinear,
    WrongSize,
    NotPlanar,
    UnknownLemma,
    NotASecant,
    NoSecant,
    NotSmallMinimal,
    ExponentNotDivisor,
    GuardExceeded,
    ParseError,
    InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace linblock
