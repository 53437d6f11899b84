#pragma once

#include <stdexcept>
#include <string>

namespace isoper {

enum class ErrorKind {
    NonConvex,
    Degenerate,
    InvalidNumber,
    RadiusTooLarge,
    VolumeOutOfRange,
    DomainMismatch,
    SamplerInfeasible,
    ScheduleInvalid,
    Parse,
    InvalidGrid,
};

const char* to_string(ErrorKind kind);

// Single exception type for the library; callers dispatch on kind().
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::NonConvex: return "NonConvex";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::InvalidNumber: return "InvalidNumber";
    case ErrorKind::RadiusTooLarge: return "RadiusTooLarge";
    case ErrorKind::VolumeOutOfRange: return "VolumeOutOfRange";
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::SamplerInfeasible: return "SamplerInfeasible";
    case ErrorKind::ScheduleInvalid: return "ScheduleInvalid";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::InvalidGrid: return "InvalidGrid";
    }
    return "Unknown";
}

} // namespace isoper
