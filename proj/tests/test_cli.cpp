#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "runge/calibration.hpp"
#include "runge/cli.hpp"
#include "runge/errors.hpp"

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace runge;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args, int expect_code = 0) {
    const Run r = run(std::move(args));
    REQUIRE_MESSAGE(r.code == expect_code, r.err);
    return json::parse(r.out);
}

std::string write_temp(const std::string& name, const std::string& text) {
    const std::string path = std::string(RUNGE_TEST_TMP) + "/" + name;
    std::ofstream(path) << text;
    return path;
}

void check_schema(const json& doc) {
    REQUIRE(doc.is_object());
    CHECK(doc.size() == 5);
    for (const char* key : {"command", "config", "records", "summary", "version"}) CHECK(doc.contains(key));
    CHECK(doc["records"].is_array());
    CHECK(doc["version"] == kVersion);
}

}  // namespace

TEST_CASE("bound") {
    const json doc = run_json({"bound", "--p", "37"});
    check_schema(doc);
    CHECK(doc["command"] == "bound");
    CHECK(doc["summary"]["runge_bound"].get<double>() == doctest::Approx(69.88).epsilon(1e-3));
    CHECK(doc["config"]["c_runge"] == 10.0);

    const json zero = run_json({"bound", "--p", "37", "--c-runge", "0"});
    CHECK(zero["records"][0]["runge_bound"].get<double>() == doctest::Approx(59.88).epsilon(1e-3));

    const Run bad = run({"bound", "--p", "4"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("not prime") != std::string::npos);
    CHECK(bad.out.empty());
}

TEST_CASE("p0") {
    const json doc = run_json({"p0", "--kappa", "1", "--c-runge", "0"});
    check_schema(doc);
    CHECK(doc["summary"]["prime"] == 89);
    CHECK(doc["records"][0]["last_failure"] == 83);
    CHECK(doc["records"][0]["value_at_failure"].get<double>() < 0);
    CHECK(run_json({"p0", "--kappa", "100", "--c-runge", "0"})["summary"]["prime"] == 2);
    CHECK(run({"p0", "--kappa", "0"}).code == 2);
}

TEST_CASE("verify subcommands pass with the shipped constants") {
    const json pu = run_json({"verify", "pu", "--p", "7", "--grid", "default"});
    check_schema(pu);
    CHECK(pu["summary"]["pass"] == true);
    for (const auto& rec : pu["records"]) CHECK(rec["pass"] == true);

    const json llogz = run_json({"verify", "llogz"});
    CHECK(llogz["summary"]["max_excess"].get<double>() <= default_calibration().c0);

    const json pga = run_json({"verify", "pga", "--q-max", "0.1"});
    CHECK(pga["summary"]["pass"] == true);
    CHECK(pga["summary"]["points"] == 150);

    const json pana = run_json({"verify", "pana", "--p", "11"});
    CHECK(pana["summary"]["failures"] == 0);

    const json custom = run_json({"verify", "pu", "--p", "5", "--c", "3", "--grid", "0:2,0.5:4"});
    CHECK(custom["records"].size() == 2);
    CHECK(custom["records"][1]["c"] == 3);
}

TEST_CASE("verification failure exits 1 and says which records failed") {
    const std::string path = write_temp("strict.conf", "s_pga = 0.5\n");
    const json doc = run_json({"verify", "pga", "--constants", path}, 1);
    CHECK(doc["summary"]["pass"] == false);
    CHECK(doc["summary"]["failures"].get<int>() > 0);
    bool some_failed = false;
    for (const auto& rec : doc["records"]) some_failed = some_failed || rec["pass"] == false;
    CHECK(some_failed);
}

TEST_CASE("usage and configuration errors exit 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"verify", "nonsense"}).code == 2);
    CHECK(run({"verify", "pu"}).code == 2);
    CHECK(run({"verify", "pu", "--p", "7", "--grid", "0:0.1"}).code == 2);
    CHECK(run({"verify", "pu", "--p", "7", "--grid", "0;1"}).code == 2);
    CHECK(run({"verify", "pana", "--p", "11", "--grid", "0:0.5"}).code == 2);
    CHECK(run({"bound", "--p", "37", "--format", "xml"}).code == 2);
    CHECK(run({"bound", "--p", "37", "--workers", "0"}).code == 2);
    CHECK(run({"bound", "--p", "37", "--constants", "/nonexistent/file"}).code == 2);
    CHECK(run({"galois", "--curve", "0,0,0,0,0", "--p", "17"}).code == 2);
    CHECK(run({"galois", "--curve", "0,0,1,-1,0", "--j", "1728", "--p", "17"}).code == 2);
    CHECK(run({"bound", "--p", "37", "--constants", write_temp("bad1.conf", "s9 = 1\n")}).code == 2);
    CHECK(run({"bound", "--p", "37", "--constants", write_temp("bad2.conf", "s1 = -1\n")}).code == 2);
    CHECK(run({"bound", "--p", "37", "--constants", write_temp("bad3.conf", "s1 = 1\ns1 = 2\n")}).code == 2);
    CHECK(run({"bound", "--p", "37", "--constants", write_temp("bad4.conf", "s1 2\n")}).code == 2);
    CHECK(run({"bound", "--help"}).code == 0);
}

TEST_CASE("galois") {
    const json doc = run_json({"galois", "--curve", "0,0,1,-1,0", "--p", "17..499", "--lmax", "1000"});
    check_schema(doc);
    CHECK(doc["records"].size() == doc["summary"]["primes"]);
    for (const auto& rec : doc["records"]) {
        CHECK(rec["status"] == "ruled-out");
        CHECK(rec["witness_ell"].get<int>() <= 1000);
    }
    const json cm = run_json({"galois", "--j", "1728", "--p", "13", "--lmax", "500"});
    CHECK(cm["records"][0]["status"] == "possibly-contained");
    CHECK(cm["records"][0]["witness_ell"].is_null());
    const json rational = run_json({"galois", "--j", "-3375/1", "--p", "11", "--lmax", "100"});
    CHECK(rational["summary"]["j"] == "-3375");
}

TEST_CASE("point evaluations and cm-table") {
    const json g = run_json({"siegel-eval", "--a", "1/2,0", "--tau", "0,2"});
    CHECK(g["summary"]["log_abs_g"].get<double>() == doctest::Approx(0.51986).epsilon(1e-5));
    const json u = run_json({"unit-eval", "--p", "5", "--c", "1", "--tau", "0,5"});
    CHECK(u["records"][0]["pass"] == true);
    const json far = run_json({"unit-eval", "--p", "5", "--tau", "0,0.1"});
    CHECK(far["records"][0]["pass"].is_null());
    const json cm = run_json({"cm-table"});
    CHECK(cm["records"].size() == 13);
    CHECK(cm["summary"]["pass"] == true);
}

TEST_CASE("json output is deterministic and independent of worker count") {
    const std::vector<std::string> args = {"verify", "pana", "--p", "11"};
    CHECK(run(args).out == run(args).out);
    auto with_workers = [&](const char* w) {
        auto a = args;
        a.insert(a.end(), {"--workers", w});
        return run_json(a);
    };
    const json one = with_workers("1"), four = with_workers("4");
    CHECK(one["records"] == four["records"]);
    CHECK(one["summary"] == four["summary"]);
    const json g1 = run_json({"galois", "--curve", "1,0,1,4,-6", "--p", "17..200", "--workers", "3"});
    const json g2 = run_json({"galois", "--curve", "1,0,1,4,-6", "--p", "17..200"});
    CHECK(g1["records"] == g2["records"]);
}

TEST_CASE("csv and text formats") {
    const Run csv = run({"galois", "--curve", "0,0,1,-1,0", "--p", "17..40", "--format", "csv"});
    REQUIRE(csv.code == 0);
    std::istringstream lines(csv.out);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "p,status,witness_ell,traces_used,bad_primes_skipped");
    int rows = 0;
    for (std::string line; std::getline(lines, line);) ++rows;
    CHECK(rows == 6);  // 17 19 23 29 31 37
    const Run text = run({"bound", "--p", "37", "--format", "text"});
    CHECK(text.out.find("runge_bound: 69.88") != std::string::npos);
}

TEST_CASE("constants file, environment variable and precedence") {
    const ConstantsFile shipped = load_constants(std::string(RUNGE_SOURCE_DIR) + "/data/constants.conf");
    const Calibration built_in = default_calibration();
    CHECK(shipped.constants.s1 == built_in.s1);
    CHECK(shipped.constants.s2 == built_in.s2);
    CHECK(shipped.constants.c0 == built_in.c0);
    CHECK(shipped.constants.s_pga == built_in.s_pga);
    CHECK(shipped.constants.pana_slack == built_in.pana_slack);
    CHECK(shipped.c_runge == 10.0);
    CHECK(shipped.kappa2 == 1.0);

    const std::string env_path = write_temp("env.conf", "c_runge = 3\nkappa2 = 4\n");
    const std::string flag_path = write_temp("flag.conf", "c_runge = 5\n");
    setenv("RUNGE_CONSTANTS", env_path.c_str(), 1);
    const json via_env = run_json({"bound", "--p", "37"});
    CHECK(via_env["config"]["c_runge"] == 3.0);
    CHECK(via_env["config"]["kappa2"] == 4.0);
    CHECK(via_env["config"]["constants_source"] == env_path);
    CHECK(run_json({"bound", "--p", "37", "--constants", flag_path})["config"]["c_runge"] == 5.0);
    CHECK(run_json({"bound", "--p", "37", "--c-runge", "7"})["config"]["c_runge"] == 7.0);
    unsetenv("RUNGE_CONSTANTS");
    CHECK(run_json({"bound", "--p", "37"})["config"]["constants_source"] == "built-in");
}

TEST_CASE("argument parsers") {
    CHECK(parse_rational("-12/8") == mpq_class(-3, 2));
    CHECK(parse_rational("1728") == 1728);
    CHECK_THROWS_AS(parse_rational("1/0"), DomainError);
    CHECK_THROWS_AS(parse_rational("x"), DomainError);
    CHECK(parse_prime_range("10..30") == std::vector<long>{11, 13, 17, 19, 23, 29});
    CHECK_THROWS_AS(parse_prime_range("30..10"), DomainError);
    CHECK_THROWS_AS(parse_prime_range("24..28"), DomainError);
    const auto tau = parse_tau("0.5,2");
    CHECK(tau.x() == 0.5);
    CHECK(tau.y() == 2.0);
    CHECK_THROWS_AS(parse_tau("0.5"), DomainError);
    CHECK_THROWS_AS(parse_tau("0,-1"), DomainError);
    CHECK_FALSE(parse_grid("default").has_value());
    CHECK(parse_grid("0:1,0.5:2")->size() == 2);
    CHECK_THROWS_AS(parse_grid("0:1,"), DomainError);
    CHECK(parse_curve("0,0,1,-1,0").discriminant() == 37);
    CHECK_THROWS_AS(parse_curve("0,0,1,-1"), DomainError);
    CHECK(parse_format("csv") == OutputFormat::Csv);
}
