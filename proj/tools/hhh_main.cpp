// Command-line front end for the triply-graded link homology calculator.
//
//   hhh hhh -m 2 -w "1 1 1" --qmax 12 --json
//   hhh homfly -m 3 -w "s1 s2^-1 s1 s2^-1"
//   hhh reduce-info -m 2 -w "1 1 1 1 1"
//   hhh check euler -m 2 -w "1 1 1" --qmax 12
//   hhh check invariance -m 3 -w "1 -2"
//   hhh check soergel
//   hhh check hecke -m 3
//
// Exit codes: 0 ok, 2 parse/config error, 3 compute error, 4 check failed.

#include <CLI11.hpp>
#include <iostream>

#include "hhh/cli.hpp"

namespace {

void add_word_options(CLI::App* cmd, hhh::RunConfig& cfg) {
    cmd->add_option("-m,--strands", cfg.strands, "number of strands")->required();
    cmd->add_option("-w,--word", cfg.word_text,
                    "braid word: signed indices (\"1 -2\") or tokens (\"s1 s2^-1\")")
        ->required();
}

void add_pipeline_options(CLI::App* cmd, hhh::RunConfig& cfg) {
    cmd->add_option("--qmax", cfg.qmax, "q-degree truncation (even; default 4*(len+strands))");
    cmd->add_flag("--reduce,!--no-reduce", cfg.reduce, "gaussian-reduce the complex (default on)");
    cmd->add_option("--jobs", cfg.jobs, "parallel workers for degree slices");
}

int finish(const hhh::Report& r) {
    std::cout << r.output;
    return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"triply graded link homology of braid closures via Soergel bimodules"};
    app.require_subcommand(1);

    hhh::RunConfig cfg;
    cfg.cache_dir = hhh::default_cache_dir();

    auto* c_hhh = app.add_subcommand("hhh", "compute the trigraded homology table");
    add_word_options(c_hhh, cfg);
    add_pipeline_options(c_hhh, cfg);
    c_hhh->add_flag("--json", cfg.json, "emit JSON");
    c_hhh->add_option("--cache-dir", cfg.cache_dir,
                      "result cache directory (default $HHH_CACHE_DIR)");

    auto* c_homfly = app.add_subcommand("homfly", "two-variable polynomial via the Markov trace");
    add_word_options(c_homfly, cfg);
    c_homfly->add_flag("--json", cfg.json, "emit JSON");

    auto* c_reduce = app.add_subcommand("reduce-info", "summand census before/after reduction");
    add_word_options(c_reduce, cfg);
    c_reduce->add_flag("--json", cfg.json, "emit JSON");

    auto* c_check = app.add_subcommand("check", "verification suites");
    c_check->require_subcommand(1);
    auto* c_euler = c_check->add_subcommand("euler", "euler characteristic against homfly");
    add_word_options(c_euler, cfg);
    c_euler->add_option("--qmax", cfg.qmax, "q-degree truncation (even)");
    c_euler->add_option("--jobs", cfg.jobs, "parallel workers");
    auto* c_inv = c_check->add_subcommand("invariance", "markov-move and braid-relation suite");
    add_word_options(c_inv, cfg);
    c_inv->add_option("--qmax", cfg.qmax, "q-degree truncation (even)");
    c_inv->add_option("--jobs", cfg.jobs, "parallel workers");
    auto* c_soergel = c_check->add_subcommand("soergel", "bimodule decomposition checks");
    auto* c_hecke = c_check->add_subcommand("hecke", "hecke algebra relation suite");
    int hecke_m = 3;
    c_hecke->add_option("-m,--strands", hecke_m, "strand count (2..4)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : hhh::kExitParse;
    }

    try {
        if (c_hhh->parsed()) return finish(hhh::run_hhh(cfg));
        if (c_homfly->parsed()) return finish(hhh::run_homfly(cfg));
        if (c_reduce->parsed()) return finish(hhh::run_reduce_info(cfg));
        if (c_euler->parsed()) return finish(hhh::run_check_euler(cfg));
        if (c_inv->parsed()) return finish(hhh::run_check_invariance(cfg));
        if (c_soergel->parsed()) return finish(hhh::run_check_soergel());
        if (c_hecke->parsed()) return finish(hhh::run_check_hecke(hecke_m));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return hhh::kExitCompute;
    }
    return hhh::kExitParse;
}
