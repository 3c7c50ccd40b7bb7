#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tiltchar {

// All multiplicities and coordinates are exact 64-bit integers. Arithmetic
// that could wrap goes through the checked_* helpers below; wraparound would
// corrupt decomposition numbers invisibly, so we fail loudly instead.
using Int = std::int64_t;

class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

class overflow_error : public error {
public:
    explicit overflow_error(const std::string& msg) : error(msg) {}
};

class parse_error : public error {
public:
    explicit parse_error(const std::string& msg) : error(msg) {}
};

inline Int checked_add(Int a, Int b)
{
    Int r;
    if (__builtin_add_overflow(a, b, &r))
        throw overflow_error("integer overflow in addition");
    return r;
}

inline Int checked_sub(Int a, Int b)
{
    Int r;
    if (__builtin_sub_overflow(a, b, &r))
        throw overflow_error("integer overflow in subtraction");
    return r;
}

inline Int checked_mul(Int a, Int b)
{
    Int r;
    if (__builtin_mul_overflow(a, b, &r))
        throw overflow_error("integer overflow in multiplication");
    return r;
}

// base^exp with overflow detection; exp >= 0
inline Int checked_pow(Int base, int exp)
{
    Int r = 1;
    for (int i = 0; i < exp; ++i)
        r = checked_mul(r, base);
    return r;
}

inline bool is_prime(Int n)
{
    if (n < 2)
        return false;
    for (Int d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

} // namespace tiltchar
