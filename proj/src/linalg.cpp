#include "pnembed/linalg.hpp"

#include <limits>

namespace pnembed {

namespace {

std::int64_t to_int64(const BigInt& x)
{
    static const BigInt lo(std::numeric_limits<std::int64_t>::min());
    static const BigInt hi(std::numeric_limits<std::int64_t>::max());
    if (x < lo || x > hi)
        throw std::overflow_error("integer does not fit in 64 bits");
    return x.convert_to<std::int64_t>();
}

} // namespace

IntVector clear_denominators(const RatVector& v)
{
    BigInt lcm(1);
    for (Eigen::Index i = 0; i < v.size(); ++i)
        lcm = boost::multiprecision::lcm(lcm, BigInt(boost::multiprecision::denominator(v(i))));

    std::vector<BigInt> scaled(static_cast<std::size_t>(v.size()));
    BigInt g(0);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const Rational x = v(i) * Rational(lcm);
        scaled[static_cast<std::size_t>(i)] = boost::multiprecision::numerator(x);
        g = boost::multiprecision::gcd(g, scaled[static_cast<std::size_t>(i)]);
    }

    IntVector out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        BigInt x = scaled[static_cast<std::size_t>(i)];
        if (g > 1)
            x /= g;
        out(i) = to_int64(x);
    }
    return out;
}

std::int64_t checked_dot(const IntVector& a, const IntVector& b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("checked_dot: dimension mismatch");
    std::int64_t acc = 0;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        std::int64_t prod = 0;
        if (__builtin_mul_overflow(a(i), b(i), &prod) || __builtin_add_overflow(acc, prod, &acc))
            throw std::overflow_error("integer dot product overflows 64 bits");
    }
    return acc;
}

} // namespace pnembed
