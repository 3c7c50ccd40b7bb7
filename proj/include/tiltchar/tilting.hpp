#pragma once

#include "tiltchar/io.hpp"
#include "tiltchar/weylchar.hpp"

#include <memory>
#include <mutex>
#include <sstream>
#include <vector>

namespace tiltchar {

// Source of the algorithm's input data: the good-filtration multiplicities
// [T(la) : nabla(mu)] of the indecomposable tilting modules. Providers are
// immutable after construction and safe to query concurrently.
class TiltingProvider {
public:
    virtual ~TiltingProvider() = default;
    virtual std::string name() const = 0;
    virtual bool supports(const Weight& la) const = 0;
    // throws unsupported_weight_error when !supports(la)
    virtual NablaMults tilting_nabla_mults(const Weight& la) const = 0;
};

using TiltingProviderPtr = std::shared_ptr<const TiltingProvider>;

namespace detail {

// the two structural facts every tilting entry must satisfy: the top factor
// nabla(la) occurs exactly once, and all other factors lie below la
inline void validate_tilting_mults(const Weight& la, const NablaMults& m,
                                   const RootSystemData& rs, const std::string& origin)
{
    auto top = m.find(la);
    if (top == m.end() || top->second != 1)
        throw validation_error(la, origin + ": T(" + to_string(la)
                                       + ") must contain nabla(" + to_string(la)
                                       + ") exactly once");
    for (const auto& [mu, c] : m) {
        if (c < 0)
            throw validation_error(mu, origin + ": negative multiplicity at " + to_string(mu)
                                           + " in T(" + to_string(la) + ")");
        if (!mu.dominant() || !dominance_leq(mu, la, rs))
            throw validation_error(mu, origin + ": weight " + to_string(mu)
                                           + " is not below the highest weight "
                                           + to_string(la));
    }
}

} // namespace detail

// Built-in rank-1 tilting data, valid for every prime. In the window
// 0 <= m <= p-1 the tilting module is costandard; for p <= m <= 2p-2 it has
// the two factors nabla(m), nabla(2p-2-m); beyond that it splits off a
// Frobenius twist: T(m) = T(p-1+s) (x) T(m')^(1) with m = (p-1)+s+p*m'.
class A1TiltingProvider final : public TiltingProvider {
public:
    explicit A1TiltingProvider(Int p) : p_(p), rs_(build_root_system('A', 1))
    {
        if (!is_prime(p))
            throw error("A1 tilting provider requires a prime, got " + std::to_string(p));
    }

    std::string name() const override { return "builtin-a1(p=" + std::to_string(p_) + ")"; }

    bool supports(const Weight& la) const override
    {
        return la.rank() == 1 && la.dominant();
    }

    NablaMults tilting_nabla_mults(const Weight& la) const override
    {
        if (!supports(la))
            throw unsupported_weight_error(la, name() + " cannot answer T(" + to_string(la) + ")");
        const Int m = la[0];
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = mult_cache_.find(m);
            if (it != mult_cache_.end())
                return it->second;
        }
        NablaMults out = nabla_decompose(tilting_char(m));
        std::lock_guard<std::mutex> lock(mu_);
        return mult_cache_.emplace(m, std::move(out)).first->second;
    }

    Character tilting_char(Int m) const
    {
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = char_cache_.find(m);
            if (it != char_cache_.end())
                return it->second;
        }
        Character ch = Character::zero(rs_);
        if (m <= p_ - 1) {
            ch = nabla_character(Weight{ m }, rs_);
        } else if (m <= 2 * p_ - 2) {
            ch = char_add(nabla_character(Weight{ m }, rs_),
                          nabla_character(Weight{ 2 * p_ - 2 - m }, rs_));
        } else {
            const Int s = (m - (p_ - 1)) % p_;
            const Int rest = (m - (p_ - 1) - s) / p_;
            ch = char_mul(tilting_char(p_ - 1 + s), frobenius_twist(tilting_char(rest), p_, 1));
        }
        std::lock_guard<std::mutex> lock(mu_);
        return char_cache_.emplace(m, std::move(ch)).first->second;
    }

private:
    Int p_;
    RootSystemPtr rs_;
    mutable std::mutex mu_;
    mutable std::map<Int, Character> char_cache_;
    mutable std::map<Int, NablaMults> mult_cache_;
};

inline TiltingProviderPtr a1_tilting_provider(Int p)
{
    return std::make_shared<A1TiltingProvider>(p);
}

// In the lowest alcove, <la+rho, alpha_0^vee> <= p, the costandard module is
// simple and tilting, so T(la) = nabla(la). Works in any rank.
class LowestAlcoveProvider final : public TiltingProvider {
public:
    LowestAlcoveProvider(RootSystemPtr rs, Int p) : rs_(std::move(rs)), p_(p) {}

    std::string name() const override { return "builtin-lowest-alcove"; }

    bool supports(const Weight& la) const override
    {
        return la.rank() == static_cast<std::size_t>(rs_->rank) && la.dominant()
            && pairing_alpha0(la + rs_->rho, *rs_) <= p_;
    }

    NablaMults tilting_nabla_mults(const Weight& la) const override
    {
        if (!supports(la))
            throw unsupported_weight_error(la, name() + " cannot answer T(" + to_string(la)
                                                   + "): not in the lowest alcove");
        return NablaMults{ { la, 1 } };
    }

private:
    RootSystemPtr rs_;
    Int p_;
};

inline TiltingProviderPtr lowest_alcove_provider(RootSystemPtr rs, Int p)
{
    return std::make_shared<LowestAlcoveProvider>(std::move(rs), p);
}

// Tries each provider in order; the first one supporting the weight answers.
// With cross_check enabled, all supporting providers are queried and any
// disagreement is an error.
class CompositeProvider final : public TiltingProvider {
public:
    explicit CompositeProvider(std::vector<TiltingProviderPtr> providers,
                               bool cross_check = false)
        : providers_(std::move(providers)), cross_check_(cross_check)
    {
    }

    std::string name() const override
    {
        std::ostringstream os;
        os << "composite(";
        for (std::size_t i = 0; i < providers_.size(); ++i) {
            if (i)
                os << ", ";
            os << providers_[i]->name();
        }
        os << ")";
        return os.str();
    }

    bool supports(const Weight& la) const override
    {
        for (const auto& p : providers_)
            if (p->supports(la))
                return true;
        return false;
    }

    NablaMults tilting_nabla_mults(const Weight& la) const override
    {
        const TiltingProvider* first = nullptr;
        NablaMults answer;
        for (const auto& p : providers_) {
            if (!p->supports(la))
                continue;
            if (!first) {
                first = p.get();
                answer = p->tilting_nabla_mults(la);
                if (!cross_check_)
                    return answer;
            } else {
                const NablaMults other = p->tilting_nabla_mults(la);
                if (other != answer)
                    throw validation_error(la, "providers disagree on T(" + to_string(la)
                                                   + "): " + first->name() + " vs " + p->name());
            }
        }
        if (!first)
            throw unsupported_weight_error(la, "no provider supports T(" + to_string(la)
                                                   + ") [" + name() + "]");
        return answer;
    }

private:
    std::vector<TiltingProviderPtr> providers_;
    bool cross_check_;
};

inline TiltingProviderPtr composite_provider(std::vector<TiltingProviderPtr> providers,
                                             bool cross_check = false)
{
    return std::make_shared<CompositeProvider>(std::move(providers), cross_check);
}

// Provider backed by a data file:
//   { "type": "A", "rank": 1, "p": 2,
//     "entries": [ { "highest_weight": [2],
//                    "nabla_multiplicities": [ {"weight":[2],"mult":1}, ... ] },
//                  { "highest_weight": [3],
//                    "character": [ {"weight":[3],"mult":1}, ... ] } ] }
// Each entry carries exactly one of nabla_multiplicities / character; raw
// characters are converted at load time. Every entry is validated.
class FileTiltingProvider final : public TiltingProvider {
public:
    FileTiltingProvider(std::string path, RootSystemPtr rs, Int p,
                        std::map<Weight, NablaMults> entries)
        : path_(std::move(path)), rs_(std::move(rs)), p_(p), entries_(std::move(entries))
    {
    }

    std::string name() const override { return "file:" + path_; }
    const RootSystemPtr& root_system() const { return rs_; }
    Int p() const { return p_; }
    std::size_t size() const { return entries_.size(); }

    bool supports(const Weight& la) const override { return entries_.count(la) != 0; }

    NablaMults tilting_nabla_mults(const Weight& la) const override
    {
        auto it = entries_.find(la);
        if (it == entries_.end())
            throw unsupported_weight_error(la, name() + " has no entry for T(" + to_string(la)
                                                   + ")");
        return it->second;
    }

private:
    std::string path_;
    RootSystemPtr rs_;
    Int p_;
    std::map<Weight, NablaMults> entries_;
};

inline std::shared_ptr<const FileTiltingProvider> file_provider_load(const std::string& path)
{
    const json j = load_json_file(path);
    if (!j.is_object() || !j.contains("type") || !j.contains("rank") || !j.contains("p")
        || !j.contains("entries"))
        throw parse_error(path + ": expected {type, rank, p, entries}");
    const std::string type = j["type"].get<std::string>();
    const int rank = j["rank"].get<int>();
    const Int p = j["p"].get<Int>();
    if (!is_prime(p))
        throw parse_error(path + ": p = " + std::to_string(p) + " is not prime");
    // "type" is either a bare letter (rank supplied separately) or a full label
    RootSystemPtr rs = (type.size() == 1)
        ? build_root_system(type[0], rank)
        : build_root_system(type);
    if (rs->rank != rank)
        throw parse_error(path + ": rank " + std::to_string(rank) + " does not match type '"
                          + type + "'");

    std::map<Weight, NablaMults> entries;
    if (!j["entries"].is_array())
        throw parse_error(path + ": entries must be a list");
    for (const auto& e : j["entries"]) {
        if (!e.contains("highest_weight"))
            throw parse_error(path + ": entry without highest_weight: " + e.dump());
        const Weight hw = weight_from_json(e["highest_weight"], rs->rank);
        if (!hw.dominant())
            throw validation_error(hw, path + ": highest weight " + to_string(hw)
                                           + " is not dominant");
        if (entries.count(hw))
            throw parse_error(path + ": duplicate entry for " + to_string(hw));
        const bool has_mults = e.contains("nabla_multiplicities");
        const bool has_char = e.contains("character");
        if (has_mults == has_char)
            throw parse_error(path + ": entry " + to_string(hw)
                              + " needs exactly one of nabla_multiplicities/character");
        NablaMults m;
        if (has_mults) {
            m = weight_map_from_json(e["nabla_multiplicities"], rs->rank);
        } else {
            // negative elimination steps surface here as validation errors
            m = nabla_decompose(character_from_json(e["character"], rs));
        }
        detail::validate_tilting_mults(hw, m, *rs, path);
        entries.emplace(hw, std::move(m));
    }
    return std::make_shared<FileTiltingProvider>(path, std::move(rs), p, std::move(entries));
}

} // namespace tiltchar
