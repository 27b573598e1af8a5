#include "wta/semifield.hpp"

#include <boost/functional/hash.hpp>

#include <cctype>

namespace wta {

Kind parse_kind(std::string_view name) {
    if (name == "boolean") return Kind::Boolean;
    if (name == "rational") return Kind::Rational;
    if (name == "tropical") return Kind::Tropical;
    if (name == "max-times") return Kind::MaxTimes;
    throw DomainError("unknown semifield kind: " + std::string(name));
}

std::string_view kind_name(Kind k) {
    switch (k) {
        case Kind::Boolean: return "boolean";
        case Kind::Rational: return "rational";
        case Kind::Tropical: return "tropical";
        case Kind::MaxTimes: return "max-times";
    }
    return "?";
}

Weight Semifield::zero() const {
    switch (kind_) {
        case Kind::Tropical: return Weight{true, 0};
        default: return Weight{false, 0};
    }
}

Weight Semifield::one() const {
    switch (kind_) {
        case Kind::Tropical: return Weight{false, 0};
        default: return Weight{false, 1};
    }
}

Weight Semifield::add(const Weight& a, const Weight& b) const {
    switch (kind_) {
        case Kind::Boolean:
        case Kind::MaxTimes:
            return a.value >= b.value ? a : b;
        case Kind::Rational:
            return Weight{false, a.value + b.value};
        case Kind::Tropical:
            if (a.inf) return b;
            if (b.inf) return a;
            return a.value <= b.value ? a : b;
    }
    throw DomainError("bad kind");
}

Weight Semifield::mul(const Weight& a, const Weight& b) const {
    switch (kind_) {
        case Kind::Boolean:
            return a.value <= b.value ? a : b;
        case Kind::Rational:
        case Kind::MaxTimes:
            return Weight{false, a.value * b.value};
        case Kind::Tropical:
            if (a.inf || b.inf) return zero();
            return Weight{false, a.value + b.value};
    }
    throw DomainError("bad kind");
}

Weight Semifield::inv(const Weight& a) const {
    if (is_zero(a)) throw DomainError("inverse of semifield zero");
    switch (kind_) {
        case Kind::Boolean:
            return a;
        case Kind::Rational:
        case Kind::MaxTimes:
            return Weight{false, 1 / a.value};
        case Kind::Tropical:
            return Weight{false, -a.value};
    }
    throw DomainError("bad kind");
}

namespace {

Rational parse_fraction(std::string_view text) {
    // integer, p/q, or decimal like -1.25
    std::string s(text);
    try {
        auto slash = s.find('/');
        if (slash != std::string::npos) {
            boost::multiprecision::cpp_int num(s.substr(0, slash));
            boost::multiprecision::cpp_int den(s.substr(slash + 1));
            if (den == 0) throw DomainError("zero denominator in weight: " + s);
            return Rational(num, den);
        }
        auto dot = s.find('.');
        if (dot != std::string::npos) {
            std::string digits = s.substr(0, dot) + s.substr(dot + 1);
            boost::multiprecision::cpp_int num(digits);
            boost::multiprecision::cpp_int den = 1;
            for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
            return Rational(num, den);
        }
        return Rational(boost::multiprecision::cpp_int(s));
    } catch (const DomainError&) {
        throw;
    } catch (const std::exception&) {
        throw DomainError("malformed weight: " + s);
    }
}

} // namespace

Weight Semifield::parse(std::string_view text) const {
    if (kind_ == Kind::Tropical && text == "inf") return zero();
    Weight w{false, parse_fraction(text)};
    if (!valid(w)) {
        throw DomainError("weight '" + std::string(text) + "' is outside the " +
                          std::string(kind_name(kind_)) + " carrier");
    }
    return w;
}

std::string Semifield::print(const Weight& a) const {
    if (a.inf) return "inf";
    return a.value.str();
}

std::string Semifield::encode(const Weight& a) const {
    if (a.inf) return "~inf";
    // cpp_rational keeps the fraction reduced with positive denominator.
    return a.value.str();
}

bool Semifield::valid(const Weight& a) const {
    switch (kind_) {
        case Kind::Boolean:
            return !a.inf && (a.value == 0 || a.value == 1);
        case Kind::Rational:
            return !a.inf;
        case Kind::Tropical:
            return !a.inf || a.value == 0;
        case Kind::MaxTimes:
            return !a.inf && a.value >= 0 && a.value <= 1;
    }
    return false;
}

std::size_t weight_hash(const Weight& a) {
    std::size_t seed = a.inf ? 0x9e3779b9u : 0u;
    if (!a.inf) {
        boost::hash_combine(seed, boost::multiprecision::hash_value(a.value));
    }
    return seed;
}

} // namespace wta
