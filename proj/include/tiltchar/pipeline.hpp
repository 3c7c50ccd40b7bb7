#pragma once

#include "tiltchar/io.hpp"
#include "tiltchar/tilting.hpp"
#include "tiltchar/weylchar.hpp"

#include <atomic>
#include <filesystem>
#include <mutex>
#include <optional>

namespace tiltchar {

// Coefficients of [nabla(mu)] over the twisted-tensor basis
// L(la0) (x) nabla(la1)^(r): sparse, unitriangular, integer (possibly
// negative off the diagonal).
using PrBasisCoeffs = WeightMap;

struct PipelineOptions {
    // T(la) = nabla(la) = L(la) in the lowest alcove; short-circuiting there
    // keeps provider demands down. Correctness does not depend on it.
    bool lowest_alcove_shortcut = true;
    std::optional<std::string> cache_dir;
};

// 2(p^r - 1) rho - la0* + p^r la1: the tilting weight whose good-filtration
// multiplicities drive the coefficient recursion. Always dominant because
// every coordinate of la0* is at most p^r - 1.
inline Weight steinberg_shift(const Weight& la0, const Weight& la1, const RootSystemData& rs,
                              Int p, int r)
{
    const Int q = checked_pow(p, r);
    if (!la0.dominant())
        throw error("steinberg_shift: la0 must be dominant, got " + to_string(la0));
    for (std::size_t i = 0; i < la0.rank(); ++i)
        if (la0[i] >= q)
            throw error("steinberg_shift: " + to_string(la0) + " is not " + std::to_string(r)
                        + "-restricted for p = " + std::to_string(p));
    if (!la1.dominant())
        throw error("steinberg_shift: la1 must be dominant, got " + to_string(la1));
    const Weight dual0 = dual_weight(la0, rs);
    Weight out = la1;
    for (std::size_t i = 0; i < out.rank(); ++i)
        out[i] = checked_sub(checked_add(2 * (q - 1), checked_mul(q, la1[i])), dual0[i]);
    return out;
}

// One run of the algorithm: a root system, a prime, an r, and a tilting data
// source, plus every memo table the mutual recursion relies on. Queries are
// safe from several threads; duplicated computation is possible under
// contention but results are single-writer-per-key.
class PipelineContext {
public:
    PipelineContext(RootSystemPtr rs, Int p, int r, TiltingProviderPtr provider,
                    PipelineOptions options = {})
        : rs_(std::move(rs)), p_(p), r_(r), provider_(std::move(provider)),
          options_(std::move(options))
    {
        if (!is_prime(p_))
            throw error("pipeline requires a prime, got " + std::to_string(p_));
        if (r_ < 1)
            throw error("pipeline requires r >= 1");
        q_ = checked_pow(p_, r_);
    }

    const RootSystemPtr& rs() const { return rs_; }
    Int p() const { return p_; }
    int r() const { return r_; }
    Int pr() const { return q_; }
    const TiltingProviderPtr& provider() const { return provider_; }
    const PipelineOptions& options() const { return options_; }
    std::size_t cache_hits() const { return cache_hits_.load(); }

    // provider access with memoization and gap reporting
    NablaMults tilting_mults(const Weight& la) const
    {
        if (auto hit = lookup(tilt_cache_, tilt_mu_, la))
            return *hit;
        NablaMults m = provider_->tilting_nabla_mults(la);
        return store(tilt_cache_, tilt_mu_, la, std::move(m));
    }

    // a^r_mu(la): coefficient of the basis element at la in the expansion of
    // [nabla(mu)]. Zero unless la <= mu; recursion over the digits of la.
    Int a_coeff(const Weight& mu, const Weight& la) const
    {
        require_dominant(mu, "a_coeff");
        require_dominant(la, "a_coeff");
        if (!dominance_leq(la, mu, *rs_))
            return 0;
        const auto key = std::make_pair(mu, la);
        if (auto hit = lookup(a_cache_, a_mu_, key))
            return *hit;
        const auto [la0, la1] = decompose_pr(la, p_, r_);
        const NablaMults big = tilting_mults(steinberg_shift(la0, la1, *rs_, p_, r_));
        Int val = 0;
        if (auto it = big.find(mu); it != big.end())
            val = it->second;
        if (!la1.zero()) {
            for (const auto& [sigma, tmult] : tilting_mults(la1)) {
                if (sigma == la1)
                    continue; // the sum runs over sigma strictly below la1
                val = checked_sub(val,
                                  checked_mul(a_coeff(mu, la0 + q_ * sigma), tmult));
            }
        }
        return store(a_cache_, a_mu_, key, std::move(val));
    }

    // [L(sigma0) (x) nabla(sigma1)^(r) : L(mu)]: nonzero only when the
    // restricted digits agree, in which case it is a composition multiplicity
    // for the much smaller weight sigma1.
    Int comp_mult_pr(const Weight& sigma, const Weight& mu) const
    {
        require_dominant(sigma, "comp_mult_pr");
        require_dominant(mu, "comp_mult_pr");
        const auto [s0, s1] = decompose_pr(sigma, p_, r_);
        const auto [m0, m1] = decompose_pr(mu, p_, r_);
        if (!(s0 == m0))
            return 0;
        if (checked_mul(q_, pairing_alpha0(s1, *rs_)) > pairing_alpha0(sigma, *rs_))
            throw error("internal: recursion measure failed to shrink at " + to_string(sigma));
        const DecompRow& row = decomp_row(s1);
        auto it = row.find(m1);
        return it == row.end() ? 0 : it->second;
    }

    // [nabla(la) : L(mu)] for all mu; validated unitriangular and nonnegative.
    const DecompRow& decomp_row(const Weight& la) const
    {
        require_dominant(la, "decomp_row");
        if (const DecompRow* hit = lookup_ref(row_cache_, row_mu_, la))
            return *hit;
        DecompRow row;
        if (la.zero()) {
            row[la] = 1;
        } else if (options_.lowest_alcove_shortcut
                   && pairing_alpha0(la + rs_->rho, *rs_) <= p_) {
            row[la] = 1;
        } else {
            const auto& below = weights_below(la);
            for (const auto& mu : below) {
                Int acc = 0;
                for (const auto& sigma : below)
                    acc = checked_add(acc,
                                      checked_mul(a_coeff(la, sigma), comp_mult_pr(sigma, mu)));
                if (acc < 0)
                    throw validation_error(mu, "negative composition multiplicity "
                                                   + std::to_string(acc) + " at "
                                                   + to_string(mu) + " in the row of "
                                                   + to_string(la)
                                                   + "; tilting input is inconsistent");
                if (acc != 0)
                    row[mu] = acc;
            }
            if (row.count(la) == 0 || row[la] != 1)
                throw validation_error(la, "row of " + to_string(la)
                                               + " is not unitriangular; tilting input is"
                                                 " inconsistent");
        }
        return store_ref(row_cache_, row_mu_, la, std::move(row));
    }

    // [L(la)] by back-substitution through the unitriangular decomposition
    // rows; every weight multiplicity of the result must be nonnegative.
    const Character& simple_character(const Weight& la) const
    {
        require_dominant(la, "simple_character");
        if (const Character* hit = lookup_ref(simple_cache_, simple_mu_, la))
            return *hit;
        Character ch = nabla_character(la, rs_);
        for (const auto& [mu, c] : decomp_row(la)) {
            if (mu == la)
                continue;
            ch = char_sub(ch, char_scale(c, simple_character(mu)));
        }
        for (const auto& [w, m] : ch.mults())
            if (m < 0)
                throw validation_error(la, "character of L(" + to_string(la)
                                               + ") came out negative at " + to_string(w)
                                               + "; tilting input is inconsistent");
        return store_ref(simple_cache_, simple_mu_, la, std::move(ch));
    }

    // [L(la)] through the tensor product factorization over base-p digits;
    // agrees with simple_character and is cheaper for large weights.
    Character simple_character_steinberg(const Weight& la) const
    {
        require_dominant(la, "simple_character_steinberg");
        auto [digit, rest] = decompose_pr(la, p_, 1);
        Character out = simple_character(digit);
        for (int twist = 1; !rest.zero(); ++twist) {
            auto [d, next] = decompose_pr(rest, p_, 1);
            out = char_mul(out, frobenius_twist(simple_character(d), p_, twist));
            rest = next;
        }
        return out;
    }

    // [L(la0) (x) nabla(la1)^(r)]
    Character pr_basis_character(const Weight& la) const
    {
        require_dominant(la, "pr_basis_character");
        const auto [la0, la1] = decompose_pr(la, p_, r_);
        return char_mul(simple_character(la0),
                        frobenius_twist(nabla_character(la1, rs_), p_, r_));
    }

    // checks sum_sigma a_mu(sigma) [L(sigma0)(x)nabla(sigma1)^(r)] = [nabla(mu)]
    bool verify_pr_expansion(const Weight& mu) const
    {
        Character acc = Character::zero(rs_);
        for (const auto& sigma : weights_below(mu)) {
            const Int c = a_coeff(mu, sigma);
            if (c != 0)
                acc = char_add(acc, char_scale(c, pr_basis_character(sigma)));
        }
        return acc == nabla_character(mu, rs_);
    }

    const std::vector<Weight>& weights_below(const Weight& la) const
    {
        if (const auto* hit = lookup_ref(below_cache_, below_mu_, la))
            return *hit;
        return store_ref(below_cache_, below_mu_, la, dominant_weights_below(la, *rs_));
    }

    // --- persistent cache -------------------------------------------------

    std::string cache_file_path() const
    {
        if (!options_.cache_dir)
            throw error("no cache directory configured");
        return *options_.cache_dir + "/" + rs_->label + "_p" + std::to_string(p_) + "_r"
            + std::to_string(r_) + ".json";
    }

    // Advisory on-disk memo of everything the run computed. Safe to delete;
    // a stale or damaged file is ignored.
    void save_cache() const
    {
        const std::string path = cache_file_path();
        json j;
        j["schema_version"] = 1;
        j["type"] = rs_->label;
        j["rank"] = rs_->rank;
        j["p"] = p_;
        j["r"] = r_;
        {
            std::scoped_lock lock(a_mu_, row_mu_, simple_mu_);
            json rows = json::array();
            for (const auto& [la, row] : row_cache_)
                rows.push_back({ { "weight", weight_to_json(la) },
                                 { "mults", weight_map_to_json(row) } });
            j["decomp_rows"] = std::move(rows);
            json coeffs = json::array();
            for (const auto& [key, v] : a_cache_)
                coeffs.push_back({ { "mu", weight_to_json(key.first) },
                                   { "lambda", weight_to_json(key.second) },
                                   { "value", v } });
            j["a_coeffs"] = std::move(coeffs);
            json simples = json::array();
            for (const auto& [la, ch] : simple_cache_)
                simples.push_back({ { "weight", weight_to_json(la) },
                                    { "mults", character_to_json(ch) } });
            j["simple_chars"] = std::move(simples);
        }
        std::filesystem::create_directories(*options_.cache_dir);
        const std::string tmp = path + ".tmp";
        {
            std::ofstream out(tmp);
            if (!out)
                throw error("cannot write " + tmp);
            out << j.dump() << '\n';
        }
        std::filesystem::rename(tmp, path);
    }

    // Returns true when a usable cache file was loaded. Anything malformed
    // or mismatched is discarded wholesale.
    bool load_cache()
    {
        const std::string path = cache_file_path();
        if (!std::filesystem::exists(path))
            return false;
        json j;
        try {
            j = load_json_file(path);
            if (j.value("schema_version", 0) != 1 || j.value("type", "") != rs_->label
                || j.value("p", Int{ 0 }) != p_ || j.value("r", 0) != r_)
                return false;
            std::map<std::pair<Weight, Weight>, Int> a;
            std::map<Weight, DecompRow> rows;
            std::map<Weight, Character> simples;
            for (const auto& e : j.at("a_coeffs"))
                a.emplace(std::make_pair(weight_from_json(e.at("mu"), rs_->rank),
                                         weight_from_json(e.at("lambda"), rs_->rank)),
                          e.at("value").get<Int>());
            for (const auto& e : j.at("decomp_rows")) {
                const Weight la = weight_from_json(e.at("weight"), rs_->rank);
                DecompRow row = weight_map_from_json(e.at("mults"), rs_->rank);
                if (row.count(la) == 0 || row[la] != 1)
                    return false;
                rows.emplace(la, std::move(row));
            }
            for (const auto& e : j.at("simple_chars")) {
                const Weight la = weight_from_json(e.at("weight"), rs_->rank);
                simples.emplace(la,
                                character_from_json(e.at("mults"), rs_));
            }
            std::scoped_lock lock(a_mu_, row_mu_, simple_mu_);
            a_cache_ = std::move(a);
            row_cache_ = std::move(rows);
            simple_cache_ = std::move(simples);
            return true;
        } catch (const std::exception&) {
            return false;
        }
    }

private:
    void require_dominant(const Weight& w, const char* where) const
    {
        if (w.rank() != static_cast<std::size_t>(rs_->rank))
            throw error(std::string(where) + ": weight rank mismatch for " + rs_->label);
        if (!w.dominant())
            throw error(std::string(where) + ": weight " + to_string(w) + " is not dominant");
    }

    // memo helpers: lookups and inserts hold the lock, computation never does
    template <class Map, class Key>
    std::optional<typename Map::mapped_type> lookup(Map& m, std::mutex& mu, const Key& k) const
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = m.find(k);
        if (it == m.end())
            return std::nullopt;
        cache_hits_.fetch_add(1, std::memory_order_relaxed);
        return it->second;
    }

    template <class Map, class Key>
    typename Map::mapped_type store(Map& m, std::mutex& mu, const Key& k,
                                    typename Map::mapped_type&& v) const
    {
        std::lock_guard<std::mutex> lock(mu);
        return m.emplace(k, std::move(v)).first->second;
    }

    // node-stable maps: returned references stay valid because entries are
    // never erased
    template <class Map, class Key>
    const typename Map::mapped_type* lookup_ref(Map& m, std::mutex& mu, const Key& k) const
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = m.find(k);
        if (it == m.end())
            return nullptr;
        cache_hits_.fetch_add(1, std::memory_order_relaxed);
        return &it->second;
    }

    template <class Map, class Key>
    const typename Map::mapped_type& store_ref(Map& m, std::mutex& mu, const Key& k,
                                               typename Map::mapped_type&& v) const
    {
        std::lock_guard<std::mutex> lock(mu);
        return m.emplace(k, std::move(v)).first->second;
    }

    RootSystemPtr rs_;
    Int p_;
    int r_;
    Int q_;
    TiltingProviderPtr provider_;
    PipelineOptions options_;

    mutable std::mutex tilt_mu_, a_mu_, row_mu_, simple_mu_, below_mu_;
    mutable std::map<Weight, NablaMults> tilt_cache_;
    mutable std::map<std::pair<Weight, Weight>, Int> a_cache_;
    mutable std::map<Weight, DecompRow> row_cache_;
    mutable std::map<Weight, Character> simple_cache_;
    mutable std::map<Weight, std::vector<Weight>> below_cache_;
    mutable std::atomic<std::size_t> cache_hits_{ 0 };
};

// The saturated set { la dominant : <la, alpha_0^vee> <= (p-1)(h-1) },
// bounded per irreducible factor with that factor's Coxeter number. Ordered
// by the alpha_0 pairing, then lexicographically.
inline std::vector<Weight> gamma1_set(const RootSystemData& rs, Int p)
{
    const std::size_t n = static_cast<std::size_t>(rs.rank);
    std::vector<Int> bound(n, 0);
    std::vector<Int> coroot(n, 0);
    std::vector<Int> factor_bound;
    for (const auto& fac : rs.factors) {
        const Int B = (p - 1) * (fac.coxeter_number - 1);
        factor_bound.push_back(B);
        for (int i = 0; i < fac.rank; ++i) {
            coroot[fac.offset + i] = fac.alpha0_coroot[i];
            bound[fac.offset + i] = B / fac.alpha0_coroot[i];
        }
    }
    std::vector<std::pair<Int, Weight>> found;
    std::vector<Int> c(n, 0);
    for (;;) {
        bool ok = true;
        for (std::size_t f = 0; f < rs.factors.size() && ok; ++f) {
            const auto& fac = rs.factors[f];
            Int v = 0;
            for (int i = 0; i < fac.rank; ++i)
                v += coroot[fac.offset + i] * c[fac.offset + i];
            ok = v <= factor_bound[f];
        }
        if (ok) {
            Weight w(std::vector<Int>(c.begin(), c.end()));
            found.emplace_back(pairing_alpha0(w, rs), std::move(w));
        }
        std::size_t k = 0;
        while (k < n && c[k] == bound[k])
            c[k++] = 0;
        if (k == n)
            break;
        ++c[k];
    }
    std::sort(found.begin(), found.end());
    std::vector<Weight> out;
    out.reserve(found.size());
    for (auto& [key, w] : found)
        out.push_back(std::move(w));

    // the set must be saturated: closed under dominant weights below
    std::set<Weight> members(out.begin(), out.end());
    for (const auto& la : out)
        for (const auto& mu : dominant_weights_below(la, rs))
            if (!members.count(mu))
                throw error("internal: gamma1 set is not saturated at " + to_string(mu));
    return out;
}

struct RChoice {
    int r = 1; // the r the run will use
    int minimal_restricting_r = 1; // smallest r making every target r-restricted
    int minimal_collapse_r = 1; // smallest r with (p-1)(h-1) < p^r
};

// r = 1 unless configured: it moves as much work as possible out of the
// tilting data. The advisory fields tell users with stronger providers how
// large an r would collapse the recursion.
inline RChoice choose_r(const RootSystemData& rs, Int p, std::optional<int> configured,
                        const std::vector<Weight>& targets)
{
    RChoice out;
    out.r = configured.value_or(1);
    Int maxcoord = 0;
    for (const auto& t : targets)
        for (Int v : t.coords)
            maxcoord = std::max(maxcoord, v);
    while (checked_pow(p, out.minimal_restricting_r) <= maxcoord)
        ++out.minimal_restricting_r;
    const Int gamma_bound = (p - 1) * (rs.coxeter_number - 1);
    while (checked_pow(p, out.minimal_collapse_r) <= gamma_bound)
        ++out.minimal_collapse_r;
    return out;
}

} // namespace tiltchar
