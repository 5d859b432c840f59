#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pnembed {

/// Malformed input text. `line()` is 1-based; 0 means "no particular line".
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& message);

    std::size_t line() const noexcept { return line_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    std::size_t line_;
    std::string detail_;
};

struct TokenLine {
    std::size_t number = 0;
    std::vector<std::string> tokens;
};

/// Splits text into whitespace-separated tokens per line. A `#` that starts
/// a token begins a comment running to end of line; a `#` inside a token
/// (as in the split label `a#1`) is an ordinary character. Blank and
/// comment-only lines are dropped.
std::vector<TokenLine> tokenize(std::string_view text);

std::uint64_t parse_count(const TokenLine& line, const std::string& token, const char* what);

} // namespace pnembed
