#pragma once

#include <string>

namespace isoper {

// Shortest text for the value rounded to 9 significant digits; locale
// independent ('.' separator). Non-finite values print as "inf", "-inf", "nan".
std::string format_number(double value);

// The value rounded to 9 significant digits.
double round_significant(double value);

} // namespace isoper
