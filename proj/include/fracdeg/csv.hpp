#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace fracdeg {

/// Shortest form with 17 significant digits; round-trips every double.
std::string format_double(double v);

/// Split on a delimiter, trimming surrounding whitespace from each piece.
std::vector<std::string> split_trimmed(std::string_view text, char delimiter);

std::string_view trim(std::string_view text);

} // namespace fracdeg
