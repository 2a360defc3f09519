#include "hhh/cli.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <filesystem>

using namespace hhh;

TEST_CASE("braid parsing") {
    auto w = parse_braid("1 1 1", 2);
    CHECK(w.letters == std::vector<int>{1, 1, 1});
    CHECK(w.writhe() == 3);

    auto tok = parse_braid("s2 s3^-1 s1", 4);
    CHECK(tok.letters == std::vector<int>{2, -3, 1});

    auto powered = parse_braid("s1^3 s2^-2", 3);
    CHECK(powered.letters == std::vector<int>{1, 1, 1, -2, -2});

    CHECK(parse_braid("", 1).letters.empty());
    CHECK_THROWS_AS(parse_braid("4", 3), BraidParseError);
    CHECK_THROWS_AS(parse_braid("0", 3), BraidParseError);
    CHECK_THROWS_AS(parse_braid("sx", 3), BraidParseError);
    CHECK_THROWS_AS(parse_braid("1 junk", 3), BraidParseError);
}

TEST_CASE("run_hhh reports") {
    RunConfig cfg;
    cfg.strands = 2;
    cfg.word_text = "1";
    cfg.qmax = 8;

    auto text = run_hhh(cfg);
    CHECK(text.exit_code == kExitOk);
    CHECK(text.output.find("total rank 1") != std::string::npos);

    cfg.json = true;
    auto js = run_hhh(cfg);
    CHECK(js.exit_code == kExitOk);
    Json j = Json::parse(js.output);
    CHECK(j["strands"] == 2);
    CHECK(j["entries"].size() == 1);
    CHECK(j["entries"][0]["q"] == 0);
    CHECK(j["entries"][0]["a"] == 0);
    CHECK(j["entries"][0]["t"] == 0);
    CHECK(j["entries"][0]["dim"] == 1);
    CHECK(j["poincare"] == "1");
    CHECK(j["euler"] == "1");

    // identical configs give byte-identical output
    auto again = run_hhh(cfg);
    CHECK(again.output == js.output);

    // bad word and bad config
    cfg.word_text = "7";
    CHECK(run_hhh(cfg).exit_code == kExitParse);
    cfg.word_text = "1";
    cfg.qmax = 7;
    CHECK(run_hhh(cfg).exit_code == kExitParse);
}

TEST_CASE("cache round trip") {
    auto dir = std::filesystem::temp_directory_path() / "hhh-cache-test";
    std::filesystem::remove_all(dir);

    RunConfig cfg;
    cfg.strands = 2;
    cfg.word_text = "1 1 1";
    cfg.qmax = 12;
    cfg.json = true;
    cfg.cache_dir = dir.string();

    auto cold = run_hhh(cfg);
    REQUIRE(cold.exit_code == kExitOk);
    BraidWord w = parse_braid(cfg.word_text, cfg.strands);
    CHECK(std::filesystem::exists(dir / cache_file_name(w, 12, true)));

    auto warm = run_hhh(cfg);
    CHECK(warm.exit_code == kExitOk);
    CHECK(warm.output == cold.output);

    std::filesystem::remove_all(dir);
}

TEST_CASE("reduce-info census") {
    RunConfig cfg;
    cfg.strands = 2;
    cfg.word_text = "1 1 1 1 1";
    auto r = run_reduce_info(cfg);
    CHECK(r.exit_code == kExitOk);
    CHECK(r.output.find("before: 32 summands; after: 6") != std::string::npos);

    cfg.json = true;
    auto j = Json::parse(run_reduce_info(cfg).output);
    CHECK(j["before"]["total"] == 32);
    CHECK(j["after"]["total"] == 6);
}

TEST_CASE("check drivers") {
    auto hecke = run_check_hecke(3);
    CHECK(hecke.exit_code == kExitOk);
    CHECK(hecke.output.find("FAIL") == std::string::npos);

    RunConfig cfg;
    cfg.strands = 2;
    cfg.word_text = "1 1 1";
    cfg.qmax = 12;
    auto euler = run_check_euler(cfg);
    CHECK(euler.exit_code == kExitOk);
    CHECK(euler.output.find("PASS") != std::string::npos);
}

TEST_CASE("homfly driver") {
    RunConfig cfg;
    cfg.strands = 2;
    cfg.word_text = "1 1 1";
    auto r = run_homfly(cfg);
    CHECK(r.exit_code == kExitOk);
    CHECK(r.output == "q^-2*a^-2 - a^-4 + q^2*a^-2\n");
}
