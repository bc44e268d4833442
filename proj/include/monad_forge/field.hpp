#ifndef MONAD_FORGE_FIELD_HPP
#define MONAD_FORGE_FIELD_HPP

#include <concepts>
#include <cstdint>
#include <string>

#include <monad_forge/errors.hpp>
#include <monad_forge/numeric.hpp>

namespace monad_forge
{

namespace detail
{

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m)
{
    std::uint64_t r = 1 % m;
    a %= m;
    while (e != 0) {
        if (e & 1U) {
            r = mulmod(r, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1U;
    }
    return r;
}

} // namespace detail

// Deterministic Miller-Rabin; the witness set is exact for all 64-bit inputs.
inline bool is_prime(std::uint64_t n)
{
    if (n < 2) {
        return false;
    }
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) {
            return n == p;
        }
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1U) == 0) {
        d >>= 1U;
        ++s;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = detail::powmod(a, d, n);
        if (x == 1 || x == n - 1) {
            continue;
        }
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = detail::mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) {
            return false;
        }
    }
    return true;
}

class RationalField;

// F_p for a prime p < 2^63. Elements are canonical residues in [0, p).
class PrimeField
{
public:
    using element = std::uint64_t;

    explicit PrimeField(std::uint64_t p) : p_(p)
    {
        if (p >= (1ULL << 63U) || !is_prime(p)) {
            throw std::invalid_argument("prime field modulus must be a prime below 2^63, got " + std::to_string(p));
        }
    }

    std::uint64_t modulus() const noexcept
    {
        return p_;
    }
    element zero() const noexcept
    {
        return 0;
    }
    element one() const noexcept
    {
        return 1;
    }
    element from_int(std::int64_t v) const noexcept
    {
        const auto m = static_cast<std::int64_t>(p_);
        auto r = v % m;
        return static_cast<element>(r < 0 ? r + m : r);
    }
    element from_integer(const Integer &v) const
    {
        Integer r = v % p_;
        if (r < 0) {
            r += p_;
        }
        return r.convert_to<element>();
    }
    element from_rational(const Rational &v) const
    {
        const element den = from_integer(boost::multiprecision::denominator(v));
        if (den == 0) {
            throw RingMismatch("coefficient " + monad_forge::to_string(v) + " does not embed into F_" + std::to_string(p_));
        }
        return mul(from_integer(boost::multiprecision::numerator(v)), inv(den));
    }

    element add(element a, element b) const noexcept
    {
        const element s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    element sub(element a, element b) const noexcept
    {
        return a >= b ? a - b : a + (p_ - b);
    }
    element neg(element a) const noexcept
    {
        return a == 0 ? 0 : p_ - a;
    }
    element mul(element a, element b) const noexcept
    {
        return detail::mulmod(a, b, p_);
    }
    element inv(element a) const
    {
        if (a == 0) {
            throw std::domain_error("division by zero in F_" + std::to_string(p_));
        }
        return detail::powmod(a, p_ - 2, p_);
    }
    bool is_zero(element a) const noexcept
    {
        return a == 0;
    }

    // Coefficient embeddings used when evaluating at points of this field.
    element embed(const PrimeField &src, element a) const
    {
        if (src != *this) {
            throw RingMismatch("cannot embed F_" + std::to_string(src.p_) + " into F_" + std::to_string(p_));
        }
        return a;
    }
    element embed(const RationalField &, const Rational &a) const
    {
        return from_rational(a);
    }

    std::string name() const
    {
        return "F_" + std::to_string(p_);
    }
    std::string to_string(element a) const
    {
        return std::to_string(a);
    }

    friend bool operator==(const PrimeField &, const PrimeField &) = default;

private:
    std::uint64_t p_;
};

class RationalField
{
public:
    using element = Rational;

    element zero() const
    {
        return 0;
    }
    element one() const
    {
        return 1;
    }
    element from_int(std::int64_t v) const
    {
        return v;
    }
    element from_integer(const Integer &v) const
    {
        return Rational(v);
    }
    element from_rational(const Rational &v) const
    {
        return v;
    }
    element add(const element &a, const element &b) const
    {
        return a + b;
    }
    element sub(const element &a, const element &b) const
    {
        return a - b;
    }
    element neg(const element &a) const
    {
        return -a;
    }
    element mul(const element &a, const element &b) const
    {
        return a * b;
    }
    element inv(const element &a) const
    {
        if (a == 0) {
            throw std::domain_error("division by zero in Q");
        }
        return 1 / a;
    }
    bool is_zero(const element &a) const
    {
        return a == 0;
    }
    element embed(const RationalField &, const Rational &a) const
    {
        return a;
    }
    element embed(const PrimeField &src, std::uint64_t) const
    {
        throw RingMismatch("cannot embed " + src.name() + " into Q");
    }

    std::string name() const
    {
        return "Q";
    }
    std::string to_string(const element &a) const
    {
        return monad_forge::to_string(a);
    }

    friend bool operator==(const RationalField &, const RationalField &) = default;
};

template <typename F>
concept Field = requires(const F &f, const typename F::element &a, std::int64_t i) {
    { f.zero() } -> std::convertible_to<typename F::element>;
    { f.one() } -> std::convertible_to<typename F::element>;
    { f.from_int(i) } -> std::convertible_to<typename F::element>;
    { f.add(a, a) } -> std::convertible_to<typename F::element>;
    { f.sub(a, a) } -> std::convertible_to<typename F::element>;
    { f.mul(a, a) } -> std::convertible_to<typename F::element>;
    { f.neg(a) } -> std::convertible_to<typename F::element>;
    { f.inv(a) } -> std::convertible_to<typename F::element>;
    { f.is_zero(a) } -> std::convertible_to<bool>;
    { f.name() } -> std::convertible_to<std::string>;
    { f == f } -> std::convertible_to<bool>;
};

static_assert(Field<PrimeField>);
static_assert(Field<RationalField>);

} // namespace monad_forge

#endif
