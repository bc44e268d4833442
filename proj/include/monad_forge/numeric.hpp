#ifndef MONAD_FORGE_NUMERIC_HPP
#define MONAD_FORGE_NUMERIC_HPP

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace monad_forge
{

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// C(n, k), zero outside 0 <= k <= n.
inline Integer binomial(long long n, long long k)
{
    if (n < 0 || k < 0 || k > n) {
        return 0;
    }
    if (k > n - k) {
        k = n - k;
    }
    Integer r = 1;
    for (long long i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

inline std::int64_t to_int64(const Integer &v)
{
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
        throw std::overflow_error("integer does not fit in 64 bits: " + v.str());
    }
    return v.convert_to<std::int64_t>();
}

inline std::string to_string(const Integer &v)
{
    return v.str();
}

inline std::string to_string(const Rational &v)
{
    if (boost::multiprecision::denominator(v) == 1) {
        return boost::multiprecision::numerator(v).str();
    }
    return boost::multiprecision::numerator(v).str() + "/" + boost::multiprecision::denominator(v).str();
}

// Parses "a" or "a/b".
inline Rational parse_rational(const std::string &s)
{
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            return Rational(Integer(s));
        }
        Integer num(s.substr(0, slash));
        Integer den(s.substr(slash + 1));
        if (den == 0) {
            throw std::invalid_argument("zero denominator");
        }
        return Rational(num, den);
    } catch (const std::runtime_error &) {
        throw std::invalid_argument("malformed rational: '" + s + "'");
    }
}

// Smallest integer >= a/b for b > 0.
inline Integer ceil_div(const Integer &a, const Integer &b)
{
    Integer q = a / b;
    if (a % b != 0 && a > 0) {
        q += 1;
    }
    return q;
}

inline Integer ceil(const Rational &r)
{
    return ceil_div(boost::multiprecision::numerator(r), boost::multiprecision::denominator(r));
}

inline Integer floor(const Rational &r)
{
    const Integer &n = boost::multiprecision::numerator(r);
    const Integer &d = boost::multiprecision::denominator(r);
    Integer q = n / d;
    if (n % d != 0 && n < 0) {
        q -= 1;
    }
    return q;
}

} // namespace monad_forge

#endif
