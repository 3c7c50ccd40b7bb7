#pragma once

#include "tiltchar/oracle.hpp"
#include "tiltchar/pipeline.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace tiltchar {

enum class VerifyLevel { off, invariants, oracle };
enum class OutputFormat { text, json_output };

// One CLI invocation's worth of configuration; also the entry point used by
// the test suites, so everything the tool can do is callable in-process.
struct RunConfig {
    std::string type = "A"; // bare letter (rank separate) or full label "A2xB3"
    std::optional<int> rank;
    Int p = 2;
    std::optional<int> r;
    std::vector<std::string> tilting_files;
    bool builtin_a1 = false;
    bool builtin_lowest_alcove = false;
    bool provider_cross_check = false;
    std::vector<Weight> weights;
    bool gamma1 = false;
    std::optional<Int> sweep_bound; // targets: all la with <la,alpha0^vee> <= bound
    OutputFormat format = OutputFormat::text;
    std::optional<std::string> cache_dir;
    VerifyLevel verify = VerifyLevel::off;
    std::optional<int> cross_check_r; // verify: recompute rows at a second r
};

// exit codes: 0 ok, 2 configuration, 3 missing tilting data, 4 inconsistent
// data detected, 5 verification failed
struct RunResult {
    int exit_code = 0;
    std::string text;
    json structured;
    std::vector<Weight> missing_tilting;
    bool ok() const { return exit_code == 0; }
};

inline Weight parse_weight(const std::string& s)
{
    std::vector<Int> c;
    std::string tok;
    std::istringstream in(s);
    while (std::getline(in, tok, ',')) {
        try {
            std::size_t used = 0;
            c.push_back(std::stoll(tok, &used));
            if (used != tok.size())
                throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw parse_error("bad weight component '" + tok + "' in '" + s + "'");
        }
    }
    if (c.empty())
        throw parse_error("empty weight '" + s + "'");
    return Weight(std::move(c));
}

// all dominant weights with <la, alpha_0^vee> <= bound (per factor)
inline std::vector<Weight> weights_with_pairing_bound(const RootSystemData& rs, Int bound)
{
    const std::size_t n = static_cast<std::size_t>(rs.rank);
    std::vector<Int> box(n, 0);
    for (const auto& fac : rs.factors)
        for (int i = 0; i < fac.rank; ++i)
            box[fac.offset + i] = bound / fac.alpha0_coroot[i];
    std::vector<std::pair<Int, Weight>> found;
    std::vector<Int> c(n, 0);
    for (;;) {
        Weight w(std::vector<Int>(c.begin(), c.end()));
        const Int v = pairing_alpha0(w, rs);
        if (v <= bound)
            found.emplace_back(v, std::move(w));
        std::size_t k = 0;
        while (k < n && c[k] == box[k])
            c[k++] = 0;
        if (k == n)
            break;
        ++c[k];
    }
    std::sort(found.begin(), found.end());
    std::vector<Weight> out;
    out.reserve(found.size());
    for (auto& [v, w] : found)
        out.push_back(std::move(w));
    return out;
}

namespace detail {

struct Session {
    RootSystemPtr rs;
    std::shared_ptr<PipelineContext> ctx;
    RChoice rchoice;
    std::vector<Weight> targets;
    std::vector<std::string> provider_names;
    bool cache_loaded = false;
};

inline Session open_session(const RunConfig& cfg)
{
    Session s;
    if (cfg.type.size() == 1) {
        if (!cfg.rank)
            throw error("--type " + cfg.type + " needs --rank");
        s.rs = build_root_system(cfg.type[0], *cfg.rank);
    } else {
        s.rs = build_root_system(cfg.type);
        if (cfg.rank && *cfg.rank != s.rs->rank)
            throw error("--rank " + std::to_string(*cfg.rank) + " does not match type "
                        + s.rs->label);
    }
    if (!is_prime(cfg.p))
        throw error("p = " + std::to_string(cfg.p) + " is not prime");

    std::vector<TiltingProviderPtr> providers;
    for (const auto& path : cfg.tilting_files) {
        auto fp = file_provider_load(path);
        if (fp->root_system()->label != s.rs->label)
            throw error(path + ": tilting data is for " + fp->root_system()->label
                        + ", the run is for " + s.rs->label);
        if (fp->p() != cfg.p)
            throw error(path + ": tilting data is for p = " + std::to_string(fp->p())
                        + ", the run uses p = " + std::to_string(cfg.p));
        providers.push_back(fp);
    }
    if (cfg.builtin_a1) {
        if (s.rs->label != "A1")
            throw error("--builtin-a1 only applies to type A rank 1");
        providers.push_back(a1_tilting_provider(cfg.p));
    }
    if (cfg.builtin_lowest_alcove)
        providers.push_back(lowest_alcove_provider(s.rs, cfg.p));
    if (providers.empty())
        throw error("no tilting data source: give --tilting FILE or a --builtin-* flag");
    for (const auto& pr : providers)
        s.provider_names.push_back(pr->name());

    std::set<Weight> seen;
    auto add_target = [&](const Weight& w) {
        if (w.rank() != static_cast<std::size_t>(s.rs->rank))
            throw error("weight " + to_string(w) + " has the wrong rank for " + s.rs->label);
        if (!w.dominant())
            throw error("weight " + to_string(w) + " is not dominant");
        if (seen.insert(w).second)
            s.targets.push_back(w);
    };
    for (const auto& w : cfg.weights)
        add_target(w);
    if (cfg.gamma1)
        for (const auto& w : gamma1_set(*s.rs, cfg.p))
            add_target(w);
    if (cfg.sweep_bound)
        for (const auto& w : weights_with_pairing_bound(*s.rs, *cfg.sweep_bound))
            add_target(w);
    if (s.targets.empty())
        throw error("no target weights: give --weight, --gamma1 or --bound");
    std::sort(s.targets.begin(), s.targets.end(),
              [&](const Weight& a, const Weight& b) {
                  const Int pa = pairing_alpha0(a, *s.rs), pb = pairing_alpha0(b, *s.rs);
                  return pa != pb ? pa < pb : a < b;
              });

    s.rchoice = choose_r(*s.rs, cfg.p, cfg.r, s.targets);
    PipelineOptions opts;
    opts.cache_dir = cfg.cache_dir;
    s.ctx = std::make_shared<PipelineContext>(
        s.rs, cfg.p, s.rchoice.r,
        composite_provider(std::move(providers), cfg.provider_cross_check), opts);
    if (cfg.cache_dir)
        s.cache_loaded = s.ctx->load_cache();
    return s;
}

inline json provenance(const Session& s, const RunConfig& cfg)
{
    json cache;
    cache["enabled"] = cfg.cache_dir.has_value();
    cache["loaded"] = s.cache_loaded;
    cache["hits"] = s.ctx->cache_hits();
    json j;
    j["tool"] = "tiltchar";
    j["schema_version"] = 1;
    j["type"] = s.rs->label;
    j["rank"] = s.rs->rank;
    j["p"] = s.ctx->p();
    j["r"] = s.ctx->r();
    j["r_advice"] = { { "minimal_restricting", s.rchoice.minimal_restricting_r },
                      { "minimal_collapse", s.rchoice.minimal_collapse_r } };
    j["providers"] = s.provider_names;
    j["cache"] = std::move(cache);
    return j;
}

inline std::string format_weight_map(const WeightMap& m)
{
    if (m.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : m) {
        if (!first)
            os << "  ";
        os << to_string(w) << ":" << c;
        first = false;
    }
    return os.str();
}

inline std::string format_chi_combination(const WeightMap& coeffs)
{
    if (coeffs.empty())
        return "0";
    // highest weights first reads like the usual expansions
    std::ostringstream os;
    bool first = true;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        const Int c = it->second;
        if (first) {
            if (c < 0)
                os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        const Int a = c < 0 ? -c : c;
        if (a != 1)
            os << a << "*";
        os << "chi(" << to_string(it->first) << ")";
    }
    return os.str();
}

inline void finish(RunResult& result, const Session& s, const RunConfig& cfg,
                   json&& results_json, std::string&& text)
{
    if (cfg.cache_dir)
        s.ctx->save_cache();
    json out;
    out["provenance"] = provenance(s, cfg);
    out["results"] = std::move(results_json);
    result.structured = std::move(out);
    result.text = std::move(text);
}

struct VerifyReport {
    bool ok = true;
    json checks = json::array();
    std::string text;

    void add(const std::string& name, bool pass, const std::string& detail)
    {
        checks.push_back({ { "name", name },
                           { "status", pass ? "pass" : "fail" },
                           { "detail", detail } });
        text += (pass ? "ok   " : "FAIL ") + name + (detail.empty() ? "" : ": " + detail)
            + "\n";
        ok = ok && pass;
    }
};

// Invariant suite over the targets; with level == oracle and rank-1 type A,
// additionally full equality against the independent rank-1 ground truth.
inline VerifyReport run_verify_checks(const Session& s, const RunConfig& cfg)
{
    VerifyReport rep;
    auto& ctx = *s.ctx;
    const auto& rs = *s.rs;

    {
        std::string detail;
        bool pass = true;
        for (const auto& la : s.targets) {
            const DecompRow& row = ctx.decomp_row(la); // validates triangularity inline
            for (const auto& [mu, c] : row)
                if (!dominance_leq(mu, la, rs)) {
                    pass = false;
                    detail = "support of row " + to_string(la) + " leaks at " + to_string(mu);
                    break;
                }
            if (!pass)
                break;
        }
        rep.add("unitriangular decomposition rows", pass, detail);
    }
    {
        std::string detail;
        bool pass = true;
        for (const auto& la : s.targets) {
            Int total = 0;
            for (const auto& [mu, c] : ctx.decomp_row(la))
                total = checked_add(total, checked_mul(c, dim(ctx.simple_character(mu))));
            if (total != weyl_dim(la, rs)) {
                pass = false;
                detail = "dimension mismatch at " + to_string(la);
                break;
            }
        }
        rep.add("dimension conservation", pass, detail);
    }
    {
        std::string detail;
        bool pass = true;
        for (const auto& la : s.targets)
            if (!ctx.verify_pr_expansion(la)) {
                pass = false;
                detail = "basis expansion fails at " + to_string(la);
                break;
            }
        rep.add("basis expansion identity", pass, detail);
    }
    {
        std::string detail;
        bool pass = true;
        for (const auto& la : s.targets)
            if (!(ctx.simple_character(la) == ctx.simple_character_steinberg(la))) {
                pass = false;
                detail = "tensor factorization disagrees at " + to_string(la);
                break;
            }
        rep.add("tensor product factorization consistency", pass, detail);
    }
    if (cfg.cross_check_r) {
        std::string detail;
        bool pass = true;
        PipelineContext other(s.rs, ctx.p(), *cfg.cross_check_r, ctx.provider(),
                              PipelineOptions{});
        for (const auto& la : s.targets)
            if (!(ctx.decomp_row(la) == other.decomp_row(la))) {
                pass = false;
                detail = "rows differ between r=" + std::to_string(ctx.r()) + " and r="
                    + std::to_string(*cfg.cross_check_r) + " at " + to_string(la);
                break;
            }
        rep.add("r-independence", pass, detail);
    }
    if (cfg.verify == VerifyLevel::oracle) {
        if (rs.label != "A1") {
            rep.add("rank-1 oracle equality", true, "skipped: only defined for A1");
        } else {
            std::string detail;
            bool pass = true;
            for (const auto& la : s.targets) {
                if (!(ctx.decomp_row(la) == oracle::sl2_decomp_row(la[0], ctx.p()))) {
                    pass = false;
                    detail = "decomposition row differs from the oracle at " + to_string(la);
                    break;
                }
                const Character expect = oracle::sl2_simple_char(la[0], ctx.p());
                if (!(ctx.simple_character(la).mults() == expect.mults())) {
                    pass = false;
                    detail = "simple character differs from the oracle at " + to_string(la);
                    break;
                }
            }
            rep.add("rank-1 oracle equality", pass, detail);
        }
    }
    return rep;
}

} // namespace detail

inline RunResult run_simple_char(const RunConfig& cfg)
{
    RunResult result;
    detail::Session s = detail::open_session(cfg);
    json items = json::array();
    std::ostringstream text;
    for (const auto& la : s.targets) {
        try {
            const Character ch = s.ctx->simple_character_steinberg(la);
            const WeightMap chi = chi_decompose(ch);
            items.push_back({ { "weight", weight_to_json(la) },
                              { "character", character_to_json(ch) },
                              { "chi_combination", weight_map_to_json(chi) },
                              { "dim", dim(ch) } });
            text << "L(" << to_string(la) << ")\n"
                 << "  weights: " << detail::format_weight_map(ch.mults()) << "\n"
                 << "  chi:     " << detail::format_chi_combination(chi) << "\n"
                 << "  dim:     " << dim(ch) << "\n";
        } catch (const unsupported_weight_error& e) {
            result.missing_tilting.push_back(e.weight());
            text << "L(" << to_string(la) << "): missing tilting data for T("
                 << to_string(e.weight()) << ")\n";
        } catch (const validation_error& e) {
            result.exit_code = 4;
            text << "L(" << to_string(la) << "): INCONSISTENT DATA: " << e.what() << "\n";
        }
    }
    if (cfg.verify != VerifyLevel::off && result.exit_code == 0
        && result.missing_tilting.empty()) {
        auto rep = detail::run_verify_checks(s, cfg);
        text << rep.text;
        items = json{ { "simple_characters", std::move(items) },
                      { "verify", std::move(rep.checks) } };
        if (!rep.ok)
            result.exit_code = 5;
    } else {
        items = json{ { "simple_characters", std::move(items) } };
    }
    if (!result.missing_tilting.empty() && result.exit_code == 0) {
        result.exit_code = 3;
        text << "missing tilting data:";
        for (const auto& w : result.missing_tilting)
            text << " " << to_string(w);
        text << "\nextend a data file with these entries and rerun\n";
    }
    detail::finish(result, s, cfg, std::move(items), text.str());
    return result;
}

inline RunResult run_decomp_row(const RunConfig& cfg)
{
    RunResult result;
    detail::Session s = detail::open_session(cfg);
    json items = json::array();
    std::ostringstream text;
    for (const auto& la : s.targets) {
        try {
            const DecompRow& row = s.ctx->decomp_row(la);
            items.push_back({ { "weight", weight_to_json(la) },
                              { "mults", weight_map_to_json(row) } });
            text << "nabla(" << to_string(la) << "): " << detail::format_weight_map(row)
                 << "\n";
        } catch (const unsupported_weight_error& e) {
            result.missing_tilting.push_back(e.weight());
            text << "nabla(" << to_string(la) << "): missing tilting data for T("
                 << to_string(e.weight()) << ")\n";
        } catch (const validation_error& e) {
            result.exit_code = 4;
            text << "nabla(" << to_string(la) << "): INCONSISTENT DATA: " << e.what() << "\n";
        }
    }
    if (cfg.verify != VerifyLevel::off && result.exit_code == 0
        && result.missing_tilting.empty()) {
        auto rep = detail::run_verify_checks(s, cfg);
        text << rep.text;
        items = json{ { "decomp_rows", std::move(items) }, { "verify", std::move(rep.checks) } };
        if (!rep.ok)
            result.exit_code = 5;
    } else {
        items = json{ { "decomp_rows", std::move(items) } };
    }
    if (!result.missing_tilting.empty() && result.exit_code == 0) {
        result.exit_code = 3;
        text << "missing tilting data:";
        for (const auto& w : result.missing_tilting)
            text << " " << to_string(w);
        text << "\n";
    }
    detail::finish(result, s, cfg, std::move(items), text.str());
    return result;
}

inline RunResult run_pr_coeffs(const RunConfig& cfg)
{
    RunResult result;
    detail::Session s = detail::open_session(cfg);
    json items = json::array();
    std::ostringstream text;
    for (const auto& mu : s.targets) {
        try {
            WeightMap coeffs;
            for (const auto& sigma : s.ctx->weights_below(mu)) {
                const Int c = s.ctx->a_coeff(mu, sigma);
                if (c != 0)
                    coeffs[sigma] = c;
            }
            items.push_back({ { "weight", weight_to_json(mu) },
                              { "coeffs", weight_map_to_json(coeffs) } });
            text << "a(" << to_string(mu) << "): " << detail::format_weight_map(coeffs)
                 << "\n";
        } catch (const unsupported_weight_error& e) {
            result.missing_tilting.push_back(e.weight());
            text << "a(" << to_string(mu) << "): missing tilting data for T("
                 << to_string(e.weight()) << ")\n";
        } catch (const validation_error& e) {
            result.exit_code = 4;
            text << "a(" << to_string(mu) << "): INCONSISTENT DATA: " << e.what() << "\n";
        }
    }
    items = json{ { "pr_coefficients", std::move(items) } };
    if (!result.missing_tilting.empty() && result.exit_code == 0) {
        result.exit_code = 3;
        text << "missing tilting data:";
        for (const auto& w : result.missing_tilting)
            text << " " << to_string(w);
        text << "\n";
    }
    detail::finish(result, s, cfg, std::move(items), text.str());
    return result;
}

inline RunResult run_verify(const RunConfig& cfg)
{
    RunConfig c = cfg;
    if (c.verify == VerifyLevel::off)
        c.verify = (c.type == "A" && c.rank == 1) || c.type == "A1"
            ? VerifyLevel::oracle
            : VerifyLevel::invariants;
    RunResult result;
    detail::Session s = detail::open_session(c);
    std::ostringstream text;
    json results;
    try {
        auto rep = detail::run_verify_checks(s, c);
        text << rep.text;
        results = json{ { "verify", std::move(rep.checks) } };
        if (!rep.ok)
            result.exit_code = 5;
    } catch (const unsupported_weight_error& e) {
        result.missing_tilting.push_back(e.weight());
        result.exit_code = 3;
        text << "missing tilting data for T(" << to_string(e.weight()) << ")\n";
        results = json{ { "verify", json::array() } };
    } catch (const validation_error& e) {
        result.exit_code = 4;
        text << "FAIL inconsistent data at " << to_string(e.weight()) << ": " << e.what()
             << "\n";
        results = json{ { "verify",
                          json::array({ { { "name", "consistency" },
                                          { "status", "fail" },
                                          { "detail", e.what() } } }) } };
    }
    detail::finish(result, s, c, std::move(results), text.str());
    return result;
}

} // namespace tiltchar
