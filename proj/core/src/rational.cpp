#include "mechlab/rational.hpp"

#include <cctype>

#include "mechlab/error.hpp"

namespace mechlab {

namespace {

bool is_integer_text(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

// GMP parses a leading zero as octal and rejects a leading '+', so
// canonicalize the text before handing it over.
BigInt big_from_text(const std::string& s) {
    const bool neg = !s.empty() && s[0] == '-';
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    while (i + 1 < s.size() && s[i] == '0') ++i;
    BigInt v(s.substr(i));
    return neg ? BigInt(-v) : v;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    try {
        if (auto slash = text.find('/'); slash != std::string::npos) {
            const std::string num = text.substr(0, slash);
            const std::string den = text.substr(slash + 1);
            if (!is_integer_text(num) || !is_integer_text(den))
                throw Error(ErrorKind::ParseError, "bad rational '" + text + "'");
            const BigInt n = big_from_text(num);
            const BigInt d = big_from_text(den);
            if (d == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + text + "'");
            return Rational(n, d);
        }
        if (is_integer_text(text)) return Rational(big_from_text(text));
        if (auto dot = text.find('.'); dot != std::string::npos) {
            std::string digits = text.substr(0, dot) + text.substr(dot + 1);
            const std::size_t frac_len = text.size() - dot - 1;
            if (!is_integer_text(digits) || frac_len == 0)
                throw Error(ErrorKind::ParseError, "bad decimal '" + text + "'");
            BigInt den = 1;
            for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
            return Rational(big_from_text(digits), den);
        }
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        // fall through to the generic error below
    }
    throw Error(ErrorKind::ParseError, "cannot parse number '" + text + "'");
}

}  // namespace mechlab
