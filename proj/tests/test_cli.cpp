#include <doctest.h>

#include <potcap/model_io.hpp>

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

using nlohmann::json;

namespace {

struct CliRun {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CliRun run_cli(const std::string& args) {
    static int counter = 0;
    const std::string tag = std::to_string(++counter);
    const std::string out_path = "cli_stdout_" + tag + ".txt";
    const std::string err_path = "cli_stderr_" + tag + ".txt";
    const std::string cmd = std::string("\"") + POTCAP_CLI_PATH + "\" " + args + " > " +
                            out_path + " 2> " + err_path;
    const int status = std::system(cmd.c_str());
    CliRun r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return r;
}

int count_lines(const std::string& s) {
    int n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

std::string first_line(const std::string& s) {
    return s.substr(0, s.find('\n'));
}

const char* kPower = R"(--model '{"kind":"power","n":3,"alpha":1.0}')";
const char* kLog1 = R"(--model '{"kind":"log","n":3,"s":3.0,"beta":1.0}')";
const char* kAhlfors3 = R"(--model '{"kind":"ahlfors","Q":3.0}')";

}  // namespace

TEST_CASE("verification runs are deterministic and seedable") {
    auto a = run_cli("verify-examples --only newtonian --format csv");
    auto b = run_cli("verify-examples --only newtonian --format csv");
    CHECK(a.code == 0);
    CHECK(b.code == 0);
    CHECK(a.out == b.out);
    CHECK(first_line(a.out) == "example,label,expected,observed,pass");
    CHECK(count_lines(a.out) == 15);  // header + 10 sampled + conformal + three p = n rows

    auto c = run_cli("verify-examples --only newtonian --format csv --seed 999");
    CHECK(c.code == 0);
    CHECK(c.out != a.out);  // the sampled annuli moved
}

TEST_CASE("injected wrong data fails verification with exit code 1") {
    auto r = run_cli("verify-examples --only ex-log --inject-beta 2.5");
    CHECK(r.code == 1);
    auto j = json::parse(r.out);
    CHECK(j["all_pass"] == false);
    bool some_fail = false;
    for (const auto& row : j["rows"])
        if (row["pass"] == false) some_fail = true;
    CHECK(some_fail);
}

TEST_CASE("capacity tables carry the fixed column schema") {
    auto r = run_cli(std::string("capacity ") + kPower +
                     " -p 2 -r 0.5 -R 1 --method all --format csv");
    CHECK(r.code == 0);
    CHECK(first_line(r.out) == "r,R,p,method,value,error_estimate,flag");
    CHECK(count_lines(r.out) == 5);  // integral, exact, dyadic, variational
}

TEST_CASE("capacity json rows parse back into result objects") {
    auto r = run_cli(std::string("capacity ") + kPower + " -p 2 -r 0.5 -R 1 --method all");
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    REQUIRE(j["rows"].size() == 4);
    bool saw_exact = false;
    for (const auto& row : j["rows"]) {
        auto cr = potcap::capacity_result_from_json(row);  // extra keys are ignored
        CHECK(std::isfinite(cr.value));
        CHECK(row.contains("ratio_to_exact"));
        if (row["method"] == "exact") {
            saw_exact = true;
            const double want = 4.0 * M_PI / std::log(2.0);
            CHECK(cr.value == doctest::Approx(want).epsilon(1e-9));
            CHECK(row["ratio_to_exact"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    CHECK(saw_exact);
}

TEST_CASE("output file receives the same bytes as stdout") {
    const std::string path = "cli_report.json";
    auto direct = run_cli(std::string("exponents ") + kAhlfors3 + " -p 2");
    auto filed = run_cli(std::string("exponents ") + kAhlfors3 + " -p 2 --out " + path);
    CHECK(direct.code == 0);
    CHECK(filed.code == 0);
    CHECK(filed.out.empty());
    CHECK(slurp(path) == direct.out);
    std::remove(path.c_str());

    auto j = json::parse(direct.out);
    CHECK(j["exponents"]["us0"] == 3.0);
    CHECK(j["critical"]["tau_p"] == 3.0);
}

TEST_CASE("gradient norm output marks divergence at the threshold") {
    auto r = run_cli(std::string("green-norms ") + kLog1 + " -p 2 --t 1.5");
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["gradient_norm"]["value"] == "divergent");
    CHECK_FALSE(j.contains("u_norm"));

    auto r2 = run_cli(std::string("green-norms ") + kLog1 + " -p 2 --tau 2");
    auto j2 = json::parse(r2.out);
    CHECK(j2["u_norm"]["value"].is_number());
    CHECK(j2["u_norm"]["value"].get<double>() > 0.0);
}

TEST_CASE("classification output names the question and the decision branch") {
    auto r = run_cli(std::string("classify ") + kAhlfors3 +
                     " -p 2 --question gradient_in_Lt --t 1.4");
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["question"] == "gradient_in_Lt");
    CHECK(j["state"] == "Member");
    CHECK(j["basis"] == "subcritical-gradient-integrability");
    CHECK(j["hypotheses_used"].is_array());
}

TEST_CASE("usage errors exit with code 2 and leave stdout clean") {
    auto bad_model = run_cli(R"(exponents --model '{"kind":"blob"}')");
    CHECK(bad_model.code == 2);
    CHECK(bad_model.out.empty());
    CHECK(bad_model.err.find("error:") != std::string::npos);

    auto bad_json = run_cli(R"(exponents --model '{half a spec')");
    CHECK(bad_json.code == 2);

    auto bad_question = run_cli(std::string("classify ") + kAhlfors3 +
                                " -p 2 --question nonsense --t 1.4");
    CHECK(bad_question.code == 2);
    CHECK(bad_question.err.find("unknown question") != std::string::npos);

    auto missing_flag = run_cli(std::string("capacity ") + kPower + " -r 1 -R 2");
    CHECK(missing_flag.code == 2);

    auto nonradial_exact = run_cli(std::string("capacity ") + kAhlfors3 +
                                   " -p 2 -r 1 -R 2 --method exact");
    CHECK(nonradial_exact.code == 2);
    CHECK(nonradial_exact.err.find("radial") != std::string::npos);
}

TEST_CASE("help is reachable from the top level") {
    auto r = run_cli("--help");
    CHECK(r.code == 0);
    CHECK(r.out.find("capacity") != std::string::npos);
    CHECK(r.out.find("verify-examples") != std::string::npos);
}
