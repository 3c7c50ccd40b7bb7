#include "tiltchar/tiltchar.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <iostream>

namespace {

using namespace tiltchar;

struct CliOptions {
    RunConfig cfg;
    std::vector<std::string> weight_args;
    std::string format = "text";
    std::string verify_level = "off";
    int rank = 0;
    int r = 0;
    long long sweep_bound = -1;
    int cross_check_r = 0;
    std::string cache_dir;
};

void add_common_options(CLI::App* cmd, CliOptions& o)
{
    cmd->add_option("--type", o.cfg.type,
                    "root system: a letter A..G with --rank, or a label like A2 or A2xB3");
    cmd->add_option("--rank", o.rank, "rank (with a bare --type letter)");
    cmd->add_option("-p", o.cfg.p, "characteristic (prime)")->required();
    cmd->add_option("-r", o.r, "twist exponent; defaults to 1");
    cmd->add_option("--tilting", o.cfg.tilting_files, "tilting data file (repeatable)");
    cmd->add_flag("--builtin-a1", o.cfg.builtin_a1, "use the built-in rank-1 tilting data");
    cmd->add_flag("--builtin-lowest-alcove", o.cfg.builtin_lowest_alcove,
                  "answer T(la)=nabla(la) inside the lowest alcove");
    cmd->add_flag("--cross-check-providers", o.cfg.provider_cross_check,
                  "error if two providers disagree on a weight");
    cmd->add_option("--weight", o.weight_args,
                    "target weight as comma-separated coordinates (repeatable)");
    cmd->add_flag("--gamma1", o.cfg.gamma1,
                  "target the saturated set <la,alpha0^vee> <= (p-1)(h-1)");
    cmd->add_option("--bound", o.sweep_bound,
                    "target all dominant weights with <la,alpha0^vee> <= BOUND");
    cmd->add_option("--format", o.format, "output format: text|json")
        ->check(CLI::IsMember({ "text", "json" }));
    cmd->add_option("--cache", o.cache_dir, "cache directory for computed tables");
    cmd->add_option("--verify", o.verify_level, "extra checking: off|invariants|oracle")
        ->check(CLI::IsMember({ "off", "invariants", "oracle" }));
    cmd->add_option("--check-r", o.cross_check_r,
                    "verify that rows agree when recomputed with this r");
}

RunConfig materialize(CliOptions& o)
{
    RunConfig cfg = o.cfg;
    if (o.rank > 0)
        cfg.rank = o.rank;
    if (o.r > 0)
        cfg.r = o.r;
    if (o.sweep_bound >= 0)
        cfg.sweep_bound = o.sweep_bound;
    if (!o.cache_dir.empty())
        cfg.cache_dir = o.cache_dir;
    if (o.cross_check_r > 0)
        cfg.cross_check_r = o.cross_check_r;
    for (const auto& w : o.weight_args)
        cfg.weights.push_back(parse_weight(w));
    cfg.format = (o.format == "json") ? OutputFormat::json_output : OutputFormat::text;
    if (o.verify_level == "invariants")
        cfg.verify = VerifyLevel::invariants;
    else if (o.verify_level == "oracle")
        cfg.verify = VerifyLevel::oracle;
    return cfg;
}

int emit(const RunResult& result, const RunConfig& cfg)
{
    if (cfg.format == OutputFormat::json_output)
        std::cout << result.structured.dump(2) << "\n";
    else
        std::cout << result.text;
    return result.exit_code;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{ "simple-module characters from tilting characters" };
    app.require_subcommand(1);

    CliOptions simple_opts, row_opts, coeff_opts, verify_opts;
    auto* simple_cmd = app.add_subcommand(
        "simple-char", "characters of simple modules L(la) for the target weights");
    add_common_options(simple_cmd, simple_opts);
    auto* row_cmd = app.add_subcommand(
        "decomp-row", "composition multiplicities [nabla(la):L(mu)] for the target weights");
    add_common_options(row_cmd, row_opts);
    auto* coeff_cmd = app.add_subcommand(
        "pr-coeffs", "coefficients of [nabla(mu)] over the twisted tensor basis");
    add_common_options(coeff_cmd, coeff_opts);
    auto* verify_cmd = app.add_subcommand(
        "verify", "run the invariant suite (and the rank-1 oracle comparison on A1)");
    add_common_options(verify_cmd, verify_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (simple_cmd->parsed()) {
            const RunConfig cfg = materialize(simple_opts);
            return emit(tiltchar::run_simple_char(cfg), cfg);
        }
        if (row_cmd->parsed()) {
            const RunConfig cfg = materialize(row_opts);
            return emit(tiltchar::run_decomp_row(cfg), cfg);
        }
        if (coeff_cmd->parsed()) {
            const RunConfig cfg = materialize(coeff_opts);
            return emit(tiltchar::run_pr_coeffs(cfg), cfg);
        }
        const RunConfig cfg = materialize(verify_opts);
        return emit(tiltchar::run_verify(cfg), cfg);
    } catch (const tiltchar::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
