#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include "errors.hpp"

namespace wordfn {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Arbitrary-precision float (expression templates off, so `auto` is safe).
/// Its working precision is process-wide and is
/// controlled through PrecisionScope; set it before fanning work out to threads.
using HighFloat = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                                boost::multiprecision::et_off>;

inline constexpr unsigned kDefaultDigits = 60;
inline constexpr unsigned kGuardDigits = 10;

/// Sets the HighFloat working precision to `digits + kGuardDigits` for the
/// lifetime of the scope.
class PrecisionScope {
public:
    explicit PrecisionScope(unsigned digits)
        : saved_(HighFloat::default_precision()), digits_(digits) {
        HighFloat::default_precision(digits + kGuardDigits);
    }
    ~PrecisionScope() { HighFloat::default_precision(saved_); }

    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

    unsigned digits() const { return digits_; }

private:
    unsigned saved_;
    unsigned digits_;
};

/// Default precision, overridable through WORDFN_PRECISION.
inline unsigned default_digits() {
    if (const char* env = std::getenv("WORDFN_PRECISION")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 15 && v <= 10000) return static_cast<unsigned>(v);
        throw InputError(std::string("WORDFN_PRECISION must be an integer in [15, 10000], got '") + env + "'");
    }
    return kDefaultDigits;
}

template <class Real>
Real from_rational(const Rational& q) {
    return Real(boost::multiprecision::numerator(q)) / Real(boost::multiprecision::denominator(q));
}

template <>
inline double from_rational<double>(const Rational& q) {
    return boost::multiprecision::numerator(q).convert_to<double>() /
           boost::multiprecision::denominator(q).convert_to<double>();
}

inline std::string rational_string(const Rational& q) {
    std::ostringstream os;
    os << boost::multiprecision::numerator(q);
    if (boost::multiprecision::denominator(q) != 1) os << '/' << boost::multiprecision::denominator(q);
    return os.str();
}

/// "num/den" always, as used in CSV output.
inline std::string rational_fraction(const Rational& q) {
    std::ostringstream os;
    os << boost::multiprecision::numerator(q) << '/' << boost::multiprecision::denominator(q);
    return os.str();
}

template <class Real>
std::string to_decimal(const Real& x, int digits) {
    std::ostringstream os;
    os.precision(digits);
    os << x;
    return os.str();
}

inline std::string fixed_decimal(const HighFloat& x, int places) {
    std::ostringstream os;
    os << std::fixed;
    os.precision(places);
    os << x;
    return os.str();
}

template <class Real>
double to_double(const Real& x) {
    if constexpr (std::is_same_v<Real, double>) return x;
    else return x.template convert_to<double>();
}

inline std::int64_t lcm64(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

} // namespace wordfn
