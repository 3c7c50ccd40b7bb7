#pragma once

#include "tiltchar/charring.hpp"

#include <mutex>
#include <numeric>

namespace tiltchar {

// Good-filtration multiplicities [M : nabla(mu)], and decomposition rows
// [nabla(lambda) : L(mu)]; both are sparse nonnegative integer maps.
using NablaMults = WeightMap;
using DecompRow = WeightMap;

namespace detail {

struct ChiKey {
    const RootSystemData* rs;
    Weight la;
    auto operator<=>(const ChiKey&) const = default;
};

inline std::mutex& chi_mutex()
{
    static std::mutex m;
    return m;
}

// Entries pin their root system through the stored Character, so keying by
// raw pointer is safe; nothing is ever evicted.
inline std::map<ChiKey, Character>& chi_table()
{
    static std::map<ChiKey, Character> t;
    return t;
}

// Freudenthal's recursion on the dominant weights below la. Multiplicities
// are computed top-down in height of la - mu; every inner product is taken
// in the scaled integral form, which cancels in the final division.
inline Character freudenthal(const Weight& la, const RootSystemPtr& rs)
{
    const auto below = dominant_weights_below(la, *rs);
    const Weight& rho = rs->rho;
    const Int norm_la = form_pairing(la, la, *rs);
    const Int casimir = form_pairing(la + rho, la + rho, *rs);
    WeightMap mult;
    mult[la] = 1;
    for (std::size_t idx = 1; idx < below.size(); ++idx) {
        const Weight& mu = below[idx];
        Int num = 0;
        for (const auto& alpha : rs->positive_roots) {
            for (Int k = 1;; ++k) {
                const Weight nu = mu + k * alpha;
                // nonzero multiplicity forces (nu,nu) <= (la,la); since mu is
                // dominant the norm is increasing in k, so we can stop here
                if (form_pairing(nu, nu, *rs) > norm_la)
                    break;
                const auto it = mult.find(make_dominant(nu, *rs).weight);
                if (it == mult.end())
                    continue;
                num = checked_add(num, checked_mul(it->second, form_pairing(nu, alpha, *rs)));
            }
        }
        const Int den = checked_sub(casimir, form_pairing(mu + rho, mu + rho, *rs));
        if (den <= 0 || (2 * num) % den != 0)
            throw error("internal: Freudenthal division failed at " + to_string(mu));
        const Int m = (2 * num) / den;
        if (m <= 0)
            throw error("internal: Freudenthal produced a nonpositive multiplicity at "
                        + to_string(mu));
        mult[mu] = m;
    }
    return Character(rs, std::move(mult));
}

} // namespace detail

// Character of the costandard module nabla(la); memoized per root system
// and weight.
inline Character nabla_character(const Weight& la, const RootSystemPtr& rs)
{
    if (!la.dominant())
        throw error("nabla_character requires a dominant weight, got " + to_string(la));
    const detail::ChiKey key{ rs.get(), la };
    {
        std::lock_guard<std::mutex> lock(detail::chi_mutex());
        auto it = detail::chi_table().find(key);
        if (it != detail::chi_table().end())
            return it->second;
    }
    Character ch = detail::freudenthal(la, rs);
    std::lock_guard<std::mutex> lock(detail::chi_mutex());
    return detail::chi_table().emplace(key, std::move(ch)).first->second;
}

// Closed-form dimension of nabla(la): prod <la+rho, alpha^vee> / <rho, alpha^vee>
// over the positive coroots. Kept reduced along the way so the only overflow
// risk is the true result.
inline Int weyl_dim(const Weight& la, const RootSystemData& rs)
{
    if (!la.dominant())
        throw error("weyl_dim requires a dominant weight, got " + to_string(la));
    Int num = 1, den = 1;
    for (const auto& coroot : rs.positive_coroots) {
        Int a = 0, b = 0;
        for (std::size_t i = 0; i < coroot.size(); ++i) {
            a += coroot[i] * (la[i] + 1);
            b += coroot[i];
        }
        num = checked_mul(num, a);
        den = checked_mul(den, b);
        const Int g = std::gcd(num, den);
        num /= g;
        den /= g;
    }
    if (den != 1)
        throw error("internal: Weyl dimension is not an integer");
    return num;
}

namespace detail {

inline std::vector<Weight> maximal_support(const Character& a)
{
    std::vector<Weight> maxima;
    for (const auto& [w, m] : a.mults()) {
        bool dominated = false;
        for (const auto& [v, mv] : a.mults())
            if (!(v == w) && dominance_leq(w, v, *a.rs())) {
                dominated = true;
                break;
            }
        if (!dominated)
            maxima.push_back(w);
    }
    return maxima;
}

inline WeightMap eliminate_nabla(const Character& a, bool require_nonnegative)
{
    WeightMap out;
    Character rem = a;
    while (!rem.empty()) {
        // several incomparable maxima may coexist; their coefficients are
        // independent, so one pass handles them all in map (lex) order
        for (const auto& mu : maximal_support(rem)) {
            const Int c = rem.at(mu);
            if (require_nonnegative && c < 0)
                throw validation_error(mu,
                                       "not a good-filtration character: coefficient "
                                           + std::to_string(c) + " at " + to_string(mu));
            out[mu] = c;
            rem = char_sub(rem, char_scale(c, nabla_character(mu, rem.rs())));
        }
    }
    return out;
}

} // namespace detail

// Multiplicities [M : nabla(mu)] of a good-filtration character, by greedy
// highest-weight elimination. A negative coefficient at any step means the
// input was not a good-filtration character and is reported as such.
inline NablaMults nabla_decompose(const Character& a)
{
    return detail::eliminate_nabla(a, true);
}

// Signed expansion of an arbitrary invariant character over the characters
// of the costandard modules.
inline WeightMap chi_decompose(const Character& a)
{
    return detail::eliminate_nabla(a, false);
}

// Rebuild a character from nabla-multiplicities (or any signed chi-expansion).
inline Character chi_combination(const WeightMap& coeffs, const RootSystemPtr& rs)
{
    Character acc = Character::zero(rs);
    for (const auto& [w, c] : coeffs)
        acc = char_add(acc, char_scale(c, nabla_character(w, rs)));
    return acc;
}

} // namespace tiltchar
