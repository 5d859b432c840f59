#include "pnembed/text_format.hpp"

#include <algorithm>
#include <charconv>

namespace pnembed {

namespace {

std::string format_message(std::size_t line, const std::string& message)
{
    if (line == 0)
        return message;
    return "line " + std::to_string(line) + ": " + message;
}

bool is_space(char c)
{
    return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f';
}

} // namespace

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error(format_message(line, message)), line_(line), detail_(message)
{
}

std::vector<TokenLine> tokenize(std::string_view text)
{
    std::vector<TokenLine> out;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = std::min(text.find('\n', pos), text.size());
        const std::string_view line = text.substr(pos, eol - pos);
        ++number;

        TokenLine tl;
        tl.number = number;
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && is_space(line[i]))
                ++i;
            if (i == line.size() || line[i] == '#')
                break;
            std::size_t j = i;
            while (j < line.size() && !is_space(line[j]))
                ++j;
            tl.tokens.emplace_back(line.substr(i, j - i));
            i = j;
        }
        if (!tl.tokens.empty())
            out.push_back(std::move(tl));
        if (eol == text.size())
            break;
        pos = eol + 1;
    }
    return out;
}

std::uint64_t parse_count(const TokenLine& line, const std::string& token, const char* what)
{
    std::uint64_t value = 0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || token.empty())
        throw ParseError(line.number, std::string("expected nonnegative integer for ") + what +
                                          ", got '" + token + "'");
    return value;
}

} // namespace pnembed
