#include <doctest.h>

#include "grm/cli.hpp"

using namespace grm;

TEST_SUITE("cli") {

TEST_CASE("code descriptor") {
    auto res = run_cli({"code", "--q", "3", "--m", "3"});
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("\"k\": 4") != std::string::npos);
    CHECK(res.output.find("\"d\": 18") != std::string::npos);
    CHECK(res.output.find("\"d_verified\": true") != std::string::npos);
    CHECK(res.output.find("\"version\": \"1.0.0\"") != std::string::npos);
}

TEST_CASE("code with rho 0 is a usage error") {
    auto res = run_cli({"code", "--q", "3", "--m", "3", "--rho", "0"});
    CHECK(res.exit_code == 1);
}

TEST_CASE("cap exceeded maps to exit 2") {
    auto res = run_cli({"code", "--q", "3", "--m", "12"});
    CHECK(res.exit_code == 2);
}

TEST_CASE("empty decomposition list is not an error") {
    auto res = run_cli({"decomp", "--q", "3", "--m", "2"});
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("\"decompositions\": []") != std::string::npos);
}

TEST_CASE("verification failure maps to exit 3") {
    auto res = run_cli({"verify-pd", "--q", "4", "--m", "2", "--s", "15", "--exhaustive"});
    CHECK(res.exit_code == 3);
    CHECK(res.output.find("FAIL") != std::string::npos);
}

TEST_CASE("verify-pd passes at the bound") {
    auto res = run_cli({"verify-pd", "--q", "4", "--m", "2", "--s", "8", "--exhaustive"});
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("\"result\": \"PASS\"") != std::string::npos);
    CHECK(res.output.find("\"subsets_tested\": 6435") != std::string::npos);
}

TEST_CASE("prob defaults to the best decomposition and bound") {
    auto res = run_cli({"prob", "--q", "4", "--m", "5", "--digits", "4"});
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("\"p\": \"0.9516\"") != std::string::npos);
    CHECK(res.output.find("\"r1\": 11") != std::string::npos);
}

TEST_CASE("encode then decode round trip") {
    auto enc = run_cli({"encode", "--q", "3", "--m", "3", "--msg", "1 2 0 1"});
    REQUIRE(enc.exit_code == 0);
    auto pos = enc.output.find("\"codeword\": \"");
    REQUIRE(pos != std::string::npos);
    auto end = enc.output.find('"', pos + 13);
    std::string codeword = enc.output.substr(pos + 13, end - pos - 13);

    auto dec = run_cli({"decode", "--q", "3", "--m", "3", "--word", codeword});
    CHECK(dec.exit_code == 0);
    CHECK(dec.output.find("\"success\": true") != std::string::npos);
    CHECK(dec.output.find(codeword) != std::string::npos);
}

TEST_CASE("identical config and seed give byte-identical documents") {
    std::vector<std::string> args = {"trials", "--q",    "4",  "--m",    "2",
                                     "--trials", "25",   "--weight", "5",
                                     "--seed", "99",     "--jobs", "1"};
    auto a = run_cli(args);
    auto b = run_cli(args);
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    // a different seed changes the transcript
    args[10] = "100";
    auto c = run_cli(args);
    CHECK(a.output != c.output);
    // more jobs may reorder work internally but not the results; only the
    // echoed config may differ
    args[10] = "99";
    args[12] = "3";
    auto d = run_cli(args);
    std::string d_normalized = d.output;
    auto pos = d_normalized.find("\"jobs\":3");
    REQUIRE(pos != std::string::npos);
    d_normalized.replace(pos, 8, "\"jobs\":1");
    CHECK(a.output == d_normalized);
}

TEST_CASE("trials summary reports full success within the guarantee") {
    auto res = run_cli({"trials", "--q", "3", "--m", "3", "--trials", "100", "--weight-min", "0",
                        "--weight-max", "8", "--seed", "5"});
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("\"success_rate\":\"1.000000\"") != std::string::npos);
    CHECK(res.output.find("\"out_of_guarantee_trials\":0") != std::string::npos);
}

TEST_CASE("out-of-guarantee trials are labeled, not refused") {
    auto res = run_cli({"trials", "--q", "4", "--m", "2", "--trials", "10", "--weight", "7",
                        "--seed", "3"});
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("\"out_of_guarantee\":true") != std::string::npos);
}

TEST_CASE("tables emission") {
    auto res = run_cli({"tables", "--q", "3", "--m-min", "3", "--m-max", "6", "--format", "csv"});
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("3,6,7,104,104,207") != std::string::npos);
    auto prob = run_cli({"tables", "--probability", "--format", "csv", "--digits", "4"});
    CHECK(prob.exit_code == 0);
    CHECK(prob.output.find("4,5,11,93,278,0.9516") != std::string::npos);
    auto bad = run_cli({"tables", "--format", "yaml"});
    CHECK(bad.exit_code == 1);
}

TEST_CASE("infoset command verifies") {
    auto res = run_cli({"infoset", "--q", "4", "--m", "2"});
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("\"verified\": true") != std::string::npos);
}

TEST_CASE("usage errors") {
    CHECK(run_cli({"code", "--q", "3"}).exit_code == 1);       // missing --m
    CHECK(run_cli({"nonsense"}).exit_code == 1);               // unknown subcommand
    CHECK(run_cli({"decomp", "--q", "3", "--m", "3", "--r1", "13"}).exit_code == 1);
}

}
