#include "afflog/rational.hpp"

namespace afflog {

Rational parse_rational(const std::string& text) {
    auto bad = [&] { throw ParseError("malformed rational: '" + text + "'"); };
    if (text.empty()) bad();
    auto slash = text.find('/');
    auto check_int = [&](const std::string& s, bool allow_sign) {
        if (s.empty()) bad();
        std::size_t i = 0;
        if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
        if (i == s.size()) bad();
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) bad();
    };
    if (slash == std::string::npos) {
        check_int(text, true);
        return Rational(Integer(text));
    }
    std::string num = text.substr(0, slash);
    std::string den = text.substr(slash + 1);
    check_int(num, true);
    check_int(den, false);
    Integer d(den);
    if (d == 0) throw ParseError("zero denominator in '" + text + "'");
    return Rational(Integer(num), d);
}

std::string format_rational(const Rational& r) {
    Integer num = boost::multiprecision::numerator(r);
    Integer den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

}  // namespace afflog
