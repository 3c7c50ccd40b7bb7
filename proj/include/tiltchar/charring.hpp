#pragma once

#include "tiltchar/rootsystem.hpp"

#include <map>
#include <set>
#include <utility>
#include <vector>

namespace tiltchar {

// Sparse integer-valued function on dominant weights; the common payload of
// characters, good-filtration multiplicities and decomposition rows.
using WeightMap = std::map<Weight, Int>;

// W-invariant element of the integral group ring of the weight lattice,
// stored as its weight-multiplicity function restricted to dominant
// representatives. Zero entries are never stored.
class Character {
public:
    Character() = default;
    Character(RootSystemPtr rs, WeightMap mults)
        : rs_(std::move(rs)), mults_(std::move(mults))
    {
        for (auto it = mults_.begin(); it != mults_.end();) {
            if (!it->first.dominant())
                throw error("character key must be dominant, got " + to_string(it->first));
            if (it->first.rank() != static_cast<std::size_t>(rs_->rank))
                throw error("character key rank mismatch for " + rs_->label);
            it = (it->second == 0) ? mults_.erase(it) : std::next(it);
        }
    }

    static Character zero(RootSystemPtr rs) { return Character(std::move(rs), {}); }

    // orbit sum of a single dominant weight
    static Character orbit(RootSystemPtr rs, const Weight& la, Int mult = 1)
    {
        WeightMap m;
        if (mult != 0)
            m[la] = mult;
        return Character(std::move(rs), std::move(m));
    }

    const RootSystemPtr& rs() const { return rs_; }
    const WeightMap& mults() const { return mults_; }
    bool empty() const { return mults_.empty(); }
    std::size_t support_size() const { return mults_.size(); }

    Int at(const Weight& w) const
    {
        auto it = mults_.find(w);
        return it == mults_.end() ? 0 : it->second;
    }

    bool operator==(const Character& o) const
    {
        return rs_->label == o.rs_->label && mults_ == o.mults_;
    }

private:
    RootSystemPtr rs_;
    WeightMap mults_;
};

namespace detail {

inline void require_same_rs(const Character& a, const Character& b)
{
    if (!a.rs() || !b.rs() || a.rs()->label != b.rs()->label)
        throw error("character root systems differ");
}

// full Weyl orbit of a weight, by closure under simple reflections
inline std::vector<Weight> weyl_orbit(const Weight& la, const RootSystemData& rs)
{
    const std::size_t n = la.rank();
    std::set<Weight> seen{ la };
    std::vector<Weight> queue{ la };
    for (std::size_t q = 0; q < queue.size(); ++q) {
        const Weight w = queue[q];
        for (std::size_t i = 0; i < n; ++i) {
            if (w[i] == 0)
                continue;
            Weight v = w;
            const Int c = w[i];
            for (std::size_t k = 0; k < n; ++k)
                v[k] = checked_sub(v[k], checked_mul(c, rs.cartan[k][i]));
            if (seen.insert(v).second)
                queue.push_back(v);
        }
    }
    return queue;
}

inline Int orbit_size(const Weight& la, const RootSystemData& rs)
{
    return static_cast<Int>(weyl_orbit(la, rs).size());
}

} // namespace detail

// weight-multiplicity function on the whole orbit support
inline WeightMap full_weight_multiplicities(const Character& a)
{
    WeightMap full;
    for (const auto& [w, m] : a.mults())
        for (const auto& v : detail::weyl_orbit(w, *a.rs()))
            full[v] = m;
    return full;
}

inline Character char_add(const Character& a, const Character& b)
{
    detail::require_same_rs(a, b);
    WeightMap m = a.mults();
    for (const auto& [w, c] : b.mults()) {
        auto [it, fresh] = m.emplace(w, c);
        if (!fresh && (it->second = checked_add(it->second, c)) == 0)
            m.erase(it);
    }
    return Character(a.rs(), std::move(m));
}

inline Character char_scale(Int n, const Character& a)
{
    if (n == 0)
        return Character::zero(a.rs());
    WeightMap m = a.mults();
    for (auto& [w, c] : m)
        c = checked_mul(n, c);
    return Character(a.rs(), std::move(m));
}

inline Character char_sub(const Character& a, const Character& b)
{
    return char_add(a, char_scale(-1, b));
}

// Product in the group ring: expand both factors over their full orbits,
// convolve, keep the dominant representatives of the (W-invariant) result.
inline Character char_mul(const Character& a, const Character& b)
{
    detail::require_same_rs(a, b);
    const WeightMap fa = full_weight_multiplicities(a);
    const WeightMap fb = full_weight_multiplicities(b);
    WeightMap full;
    for (const auto& [x, mx] : fa)
        for (const auto& [y, my] : fb) {
            const Weight s = x + y;
            auto [it, fresh] = full.emplace(s, Int{ 0 });
            it->second = checked_add(it->second, checked_mul(mx, my));
        }
    WeightMap dom;
    for (const auto& [w, m] : full)
        if (m != 0 && w.dominant())
            dom.emplace(w, m);
    return Character(a.rs(), std::move(dom));
}

// Character of the same module with the action twisted by the r-th Frobenius
// power: every weight is scaled by p^r.
inline Character frobenius_twist(const Character& a, Int p, int r)
{
    if (r < 0)
        throw error("frobenius_twist requires r >= 0");
    if (r == 0)
        return a;
    const Int q = checked_pow(p, r);
    WeightMap m;
    for (const auto& [w, c] : a.mults())
        m.emplace(q * w, c);
    return Character(a.rs(), std::move(m));
}

// The unique dominance-maximal weight of the support; errors if the support
// is empty or has several incomparable maxima.
inline Weight highest_weight(const Character& a)
{
    if (a.empty())
        throw error("highest_weight of the zero character");
    const auto& rs = *a.rs();
    std::vector<Weight> maxima;
    for (const auto& [w, m] : a.mults()) {
        bool dominated = false;
        for (const auto& [v, mv] : a.mults())
            if (!(v == w) && dominance_leq(w, v, rs)) {
                dominated = true;
                break;
            }
        if (!dominated)
            maxima.push_back(w);
    }
    if (maxima.size() != 1)
        throw error("character has " + std::to_string(maxima.size())
                    + " incomparable maximal weights, e.g. " + to_string(maxima.front()));
    return maxima.front();
}

inline Int dim(const Character& a)
{
    Int d = 0;
    for (const auto& [w, m] : a.mults())
        d = checked_add(d, checked_mul(m, detail::orbit_size(w, *a.rs())));
    return d;
}

} // namespace tiltchar
