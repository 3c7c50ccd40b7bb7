#pragma once

#include "tiltchar/tilting.hpp"
#include "tiltchar/weylchar.hpp"

#include <mutex>

namespace tiltchar {

// Ground truth for rank 1, built without the coefficient recursion: simple
// characters from the tensor product factorization over base-p digits, and
// decomposition rows by triangular elimination against those characters.
namespace oracle {

inline const RootSystemPtr& sl2_root_system()
{
    static const RootSystemPtr rs = build_root_system('A', 1);
    return rs;
}

namespace detail {

inline std::mutex& cache_mutex()
{
    static std::mutex m;
    return m;
}

inline std::map<std::pair<Int, Int>, Character>& simple_cache()
{
    static std::map<std::pair<Int, Int>, Character> t;
    return t;
}

} // namespace detail

// [L(m)] = prod_i Fr^i [L(m_i)] over the base-p digits m_i of m, with the
// restricted factors L(m_i) = nabla(m_i) for m_i < p.
inline Character sl2_simple_char(Int m, Int p)
{
    if (m < 0)
        throw error("sl2_simple_char requires m >= 0");
    if (!is_prime(p))
        throw error("sl2_simple_char requires a prime, got " + std::to_string(p));
    {
        std::lock_guard<std::mutex> lock(detail::cache_mutex());
        auto it = detail::simple_cache().find({ m, p });
        if (it != detail::simple_cache().end())
            return it->second;
    }
    const auto& rs = sl2_root_system();
    Character out = nabla_character(Weight{ m % p }, rs);
    Int rest = m / p;
    for (int twist = 1; rest > 0; ++twist, rest /= p)
        out = char_mul(out, frobenius_twist(nabla_character(Weight{ rest % p }, rs), p, twist));
    std::lock_guard<std::mutex> lock(detail::cache_mutex());
    return detail::simple_cache().emplace(std::make_pair(m, p), std::move(out)).first->second;
}

inline DecompRow sl2_decomp_row(Int m, Int p)
{
    const auto& rs = sl2_root_system();
    DecompRow row;
    Character rem = nabla_character(Weight{ m }, rs);
    while (!rem.empty()) {
        const Weight hw = highest_weight(rem);
        const Int c = rem.at(hw);
        if (c <= 0)
            throw error("internal: oracle elimination hit coefficient " + std::to_string(c)
                        + " at " + to_string(hw));
        row[hw] = c;
        rem = char_sub(rem, char_scale(c, sl2_simple_char(hw[0], p)));
    }
    return row;
}

// Validates a rank-1 tilting provider answer for T(m): unique top factor,
// support below m, and the reconstructed character a nonnegative combination
// of simple characters.
inline bool sl2_tilting_check(Int m, Int p, const TiltingProvider& provider,
                              std::string* diagnostics = nullptr)
{
    auto fail = [&](const std::string& why) {
        if (diagnostics)
            *diagnostics = "T(" + std::to_string(m) + "): " + why;
        return false;
    };
    const auto& rs = sl2_root_system();
    const Weight hw{ m };
    NablaMults mults;
    try {
        mults = provider.tilting_nabla_mults(hw);
    } catch (const error& e) {
        return fail(e.what());
    }
    auto top = mults.find(hw);
    if (top == mults.end() || top->second != 1)
        return fail("top factor nabla(" + std::to_string(m) + ") does not occur exactly once");
    for (const auto& [mu, c] : mults)
        if (c < 0 || !mu.dominant() || !dominance_leq(mu, hw, *rs))
            return fail("support weight " + to_string(mu) + " violates the bound");
    Character ch = chi_combination(mults, rs);
    if (highest_weight(ch) != hw || ch.at(hw) != 1)
        return fail("reconstructed character has the wrong highest weight");
    // every further elimination coefficient must be a nonnegative simple mult
    Character rem = ch;
    while (!rem.empty()) {
        const Weight top_w = highest_weight(rem);
        const Int c = rem.at(top_w);
        if (c < 0)
            return fail("character is not a nonnegative sum of simples at " + to_string(top_w));
        rem = char_sub(rem, char_scale(c, sl2_simple_char(top_w[0], p)));
    }
    return true;
}

} // namespace oracle
} // namespace tiltchar
