#include "cogsim/text.hpp"

#include <cctype>
#include <charconv>
#include <limits>

#include "cogsim/error.hpp"

namespace cogsim::text {

std::string format_number(double value) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc{}) throw Error("cannot format number");
    return std::string(buf, end);
}

bool parse_number(std::string_view field, double& out) {
    if (field == "inf" || field == "+inf" || field == "infinity") {
        out = std::numeric_limits<double>::infinity();
        return true;
    }
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
    return ec == std::errc{} && end == field.data() + field.size() && !field.empty();
}

bool parse_unsigned(std::string_view field, unsigned long long& out) {
    auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
    return ec == std::errc{} && end == field.data() + field.size() && !field.empty();
}

std::string quote(std::string_view label) {
    bool needs = label.empty();
    for (char c : label) {
        if (std::isspace(static_cast<unsigned char>(c)) || c == '"' || c == '\\' || c == '#') {
            needs = true;
        }
    }
    if (!needs) return std::string(label);
    std::string out = "\"";
    for (char c : label) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::vector<std::string> split_fields(std::string_view line, std::size_t line_no) {
    std::vector<std::string> fields;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i >= line.size()) break;
        std::string field;
        if (line[i] == '"') {
            ++i;
            bool closed = false;
            while (i < line.size()) {
                char c = line[i++];
                if (c == '\\' && i < line.size()) {
                    field.push_back(line[i++]);
                } else if (c == '"') {
                    closed = true;
                    break;
                } else {
                    field.push_back(c);
                }
            }
            if (!closed) throw ParseError("unterminated quoted field", line_no);
        } else {
            while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) {
                field.push_back(line[i++]);
            }
        }
        fields.push_back(std::move(field));
    }
    return fields;
}

std::string_view strip_comment(std::string_view line) {
    bool in_quotes = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (in_quotes && c == '\\') {
            ++i;
        } else if (c == '"') {
            in_quotes = !in_quotes;
        } else if (c == '#' && !in_quotes) {
            line = line.substr(0, i);
            break;
        }
    }
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.remove_suffix(1);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front()))) line.remove_prefix(1);
    return line;
}

}  // namespace cogsim::text
