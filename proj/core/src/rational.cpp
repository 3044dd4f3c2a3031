#include "boxhelly/rational.hpp"

#include <cctype>

#include "boxhelly/errors.hpp"

namespace boxhelly {

Rational make_rational(long num, long den) {
    if (den == 0) throw UsageError("rational denominator must be nonzero");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

namespace {

bool digits_only(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

bool valid_integer(std::string_view s) {
    if (!s.empty() && s.front() == '-') s.remove_prefix(1);
    return digits_only(s);
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view num = text;
    std::string_view den;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        num = text.substr(0, slash);
        den = text.substr(slash + 1);
        if (!digits_only(den) || den == "0" || den.front() == '0')
            // denominators are plain positive decimals without leading zeros
            throw ParseError("bad rational: '" + std::string(text) + "'");
    }
    if (!valid_integer(num))
        throw ParseError("bad rational: '" + std::string(text) + "'");
    // no leading zeros beyond a bare "0"
    std::string_view mag = num;
    if (!mag.empty() && mag.front() == '-') mag.remove_prefix(1);
    if (mag.size() > 1 && mag.front() == '0')
        throw ParseError("bad rational: '" + std::string(text) + "'");

    Rational r(std::string(text), 10);
    r.canonicalize();
    return r;
}

std::string rational_to_string(const Rational& value) {
    return value.get_str();
}

}  // namespace boxhelly
