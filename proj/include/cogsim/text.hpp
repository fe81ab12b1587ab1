#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace cogsim::text {

/// Shortest decimal form that parses back to the same double.
std::string format_number(double value);

/// Strict full-field parse; returns false on trailing junk. Accepts "inf".
bool parse_number(std::string_view field, double& out);
bool parse_unsigned(std::string_view field, unsigned long long& out);

/// Quotes a label when it contains whitespace, quotes or backslashes (or is
/// empty); inside quotes, '"' and '\' are backslash-escaped.
std::string quote(std::string_view label);

/// Splits a line into whitespace-separated fields honoring the quoting of
/// `quote`. Throws ParseError (line number `line`) on an unterminated quote.
std::vector<std::string> split_fields(std::string_view line, std::size_t line_no = 0);

/// Strips a trailing '#' comment (outside quotes) and surrounding space.
std::string_view strip_comment(std::string_view line);

}  // namespace cogsim::text
