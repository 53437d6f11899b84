#include "isoper/format.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

namespace isoper {

std::string format_number(double value)
{
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    const double rounded = round_significant(value);
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, rounded);
    return std::string(buf, res.ptr);
}

double round_significant(double value)
{
    if (!std::isfinite(value) || value == 0.0) return value;
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::scientific, 8);
    double out = value;
    std::from_chars(buf, res.ptr, out);
    return out;
}

} // namespace isoper
