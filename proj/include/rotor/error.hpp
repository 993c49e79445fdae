#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rotor {

enum class ErrorKind {
    BasisTooSmall,
    NotHermitian,
    NotUnitary,
    DiagonalizationFailed,
    GapClosed,
    RefinementExhausted,
    DimensionMismatch,
    BoundaryContact,
    InvalidArgument,
};

constexpr std::string_view error_name(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::BasisTooSmall: return "BasisTooSmall";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::DiagonalizationFailed: return "DiagonalizationFailed";
    case ErrorKind::GapClosed: return "GapClosed";
    case ErrorKind::RefinementExhausted: return "RefinementExhausted";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::BoundaryContact: return "BoundaryContact";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

/// Base of every error raised by the simulator. `name()` is the stable
/// identifier reported by the command-line front end.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(error_name(kind)) + ": " + message), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }
    std::string_view name() const noexcept { return error_name(kind_); }

private:
    ErrorKind kind_;
};

/// The Bloch vector of a chiral Floquet operator is undefined where its
/// quasienergy gap closes; the winding number is undefined there.
class GapClosed : public Error {
public:
    GapClosed(double theta, double margin)
        : Error(ErrorKind::GapClosed,
                "gap margin " + std::to_string(margin) + " at theta = " + std::to_string(theta)),
          theta_(theta), margin_(margin)
    {
    }

    double theta() const noexcept { return theta_; }
    double margin() const noexcept { return margin_; }

private:
    double theta_;
    double margin_;
};

} // namespace rotor
