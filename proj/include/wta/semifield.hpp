#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace wta {

/// Error raised by operations whose preconditions are violated by the
/// caller (inversion of zero, unknown states, mismatched alphabets, ...).
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Error raised when an enumeration or materialization exceeds its budget.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Rational = boost::multiprecision::cpp_rational;

enum class Kind {
    Boolean,   ///< ({0,1}, max, min, 0, 1)
    Rational,  ///< exact rationals with ordinary + and *
    Tropical,  ///< (Q ∪ {inf}, min, +, inf, 0), run over exact rationals
    MaxTimes,  ///< ([0,1] ∩ Q, max, *, 0, 1)
};

Kind parse_kind(std::string_view name);
std::string_view kind_name(Kind k);

/// One carrier element.  `inf` is used only for the tropical zero; for all
/// other kinds (and all finite tropical values) `value` holds the element.
struct Weight {
    bool inf = false;
    Rational value{};

    bool operator==(const Weight& o) const = default;
};

/// Commutative semifield operations for one of the four exact kinds.
/// All values are immutable and every operation is a pure function.
class Semifield {
public:
    explicit Semifield(Kind kind) : kind_(kind) {}

    Kind kind() const { return kind_; }

    Weight zero() const;
    Weight one() const;
    bool is_zero(const Weight& a) const { return a == zero(); }

    /// Additive operation; implemented for completeness, the algorithms in
    /// this library only use the multiplicative group.
    Weight add(const Weight& a, const Weight& b) const;
    Weight mul(const Weight& a, const Weight& b) const;

    /// Multiplicative inverse; throws DomainError on the semifield zero.
    Weight inv(const Weight& a) const;
    Weight div(const Weight& a, const Weight& b) const { return mul(a, inv(b)); }

    /// Parses the per-kind text syntax: rational "p/q" or integer; tropical
    /// decimal-or-"inf"; max-times "p/q" in [0,1]; boolean "0"/"1".
    Weight parse(std::string_view text) const;
    std::string print(const Weight& a) const;

    /// Canonical byte encoding: equal values encode identically (fractions
    /// fully reduced, positive denominator, reserved token for inf).
    std::string encode(const Weight& a) const;

    /// Checks that `a` is a carrier element of this kind.
    bool valid(const Weight& a) const;

private:
    Kind kind_;
};

std::size_t weight_hash(const Weight& a);

} // namespace wta
