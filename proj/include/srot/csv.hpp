#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "srot/core.hpp"

namespace srot {

/// Shortest round-trip scientific form, '.' decimal point and lowercase 'e'
/// regardless of the global locale. NaN prints as "nan", infinities as "inf"
/// and "-inf".
std::string format_double(double value);

/// Parse a number written by format_double (or any strtod-compatible text in
/// the "C" locale). Throws InputError on trailing garbage.
double parse_double(std::string_view text);

/// Dense whitespace-separated matrix, one row per line.
void write_matrix(std::ostream& out, const Matrix& m);
Matrix read_matrix(std::istream& in);

std::vector<std::string> split(std::string_view text, char separator);

}  // namespace srot
