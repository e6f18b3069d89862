#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(YBHOM_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult res;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
    int status = pclose(pipe);
    res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::filesystem::path write_identity_biquandle() {
    auto path = std::filesystem::temp_directory_path() / "ybhom_identity2.json";
    std::ofstream f(path);
    f << R"({"m": 2, "R1": [[0, 0], [1, 1]], "R2": [[0, 1], [0, 1]]})";
    return path;
}

std::string strip_elapsed(const std::string& json_lines) {
    std::string out;
    std::istringstream in(json_lines);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.front() == '{') {
            auto j = nlohmann::ordered_json::parse(line);
            j.erase("elapsed_ms");
            out += j.dump();
        } else {
            out += line;
        }
        out += '\n';
    }
    return out;
}

}  // namespace

TEST_CASE("axioms: verdicts and exit codes") {
    RunResult ok = run_cli("axioms cyclic:4");
    CHECK(ok.code == 0);
    CHECK(ok.out.find("biquandle:        yes") != std::string::npos);

    auto identity = write_identity_biquandle();
    RunResult id = run_cli("axioms " + identity.string());
    CHECK(id.code == 1);
    CHECK(id.out.find("yang-baxter:      pass") != std::string::npos);
    CHECK(id.out.find("diagonal:         FAIL") != std::string::npos);

    CHECK(run_cli("axioms alexander:4:2:3").code == 2);
    CHECK(run_cli("axioms nonsense:9").code == 2);
}

TEST_CASE("homology command output") {
    RunResult nyb = run_cli("homology cyclic:2 --n 1..5 --variant nyb");
    CHECK(nyb.code == 0);
    CHECK(nyb.out ==
          "H_1^nyb(cyclic:2; z) = Z+Z_2\n"
          "H_2^nyb(cyclic:2; z) = Z\n"
          "H_3^nyb(cyclic:2; z) = Z+Z_2\n"
          "H_4^nyb(cyclic:2; z) = Z\n"
          "H_5^nyb(cyclic:2; z) = Z+Z_2\n");

    RunResult one = run_cli("homology cyclic:1 --n 1..4");
    CHECK(one.code == 0);
    for (int n = 1; n <= 4; ++n)
        CHECK(one.out.find("H_" + std::to_string(n) + "^yb(cyclic:1; z) = Z\n") !=
              std::string::npos);

    RunResult d = run_cli("homology cyclic:5 --n 3 --variant d");
    CHECK(d.out == "H_3^d(cyclic:5; z) = Z^9\n");

    RunResult csv = run_cli("homology cyclic:3 --n 3 --coeff q --format csv");
    CHECK(csv.out.find("m,n,variant,coeff,group,elapsed_ms") != std::string::npos);
    CHECK(csv.out.find("3,3,yb,q,rank=9,") != std::string::npos);

    CHECK(run_cli("homology cyclic:3 --n 0..2").code == 2);
    CHECK(run_cli("homology cyclic:3 --n 2 --coeff zp:9").code == 2);
}

TEST_CASE("table command: golden subset, fault injection, determinism") {
    RunResult c3 = run_cli("table --subset C_3");
    CHECK(c3.code == 0);
    CHECK(c3.out.find("15/15 entries match") != std::string::npos);

    RunResult faulty = run_cli("table --subset C_2 --inject-fault");
    CHECK(faulty.code == 1);
    CHECK(faulty.out.find("MISMATCH") != std::string::npos);

    RunResult t1 = run_cli("table --subset C_2,C_3 --format json --threads 1");
    RunResult t4 = run_cli("table --subset C_2,C_3 --format json --threads 4");
    CHECK(t1.code == 0);
    CHECK(t1.out == t4.out);
}

TEST_CASE("verify command") {
    CHECK(run_cli("verify conjecture cyclic:4 --n 1..4").code == 0);
    CHECK(run_cli("verify splitting cyclic:3 --n 1..3").code == 0);
    CHECK(run_cli("verify torsion cyclic:3 --n 1..4").code == 0);
    CHECK(run_cli("verify cocycles cyclic:3 --n 2..3").code == 0);
    CHECK(run_cli("verify property-i cyclic:3").code == 0);

    auto identity = write_identity_biquandle();
    CHECK(run_cli("verify property-i " + identity.string()).code == 1);
    CHECK(run_cli("verify equivariance " + identity.string() + " --n 2").code == 2);
    CHECK(run_cli("verify betti " + identity.string() + " --n 1..2").code == 2);
    CHECK(run_cli("verify nonsense cyclic:2 --n 1..2").code == 2);
}

TEST_CASE("export command writes SMS files and honors budgets") {
    auto dir = std::filesystem::temp_directory_path() / "ybhom_export_test";
    std::filesystem::remove_all(dir);
    RunResult res = run_cli("export cyclic:2 --n 2 --variant yb --export " + dir.string());
    CHECK(res.code == 0);
    std::ifstream sms(dir / "boundary_cyclic-2_n2_yb.sms");
    REQUIRE(sms.good());
    std::stringstream content;
    content << sms.rdbuf();
    CHECK(content.str() == "2 4 M\n1 1 2\n2 1 -2\n1 4 -2\n2 4 2\n0 0 0\n");

    CHECK(run_cli("export cyclic:5 --n 9 --budget-entries 1000 --export " + dir.string()).code == 3);
}

TEST_CASE("cocycles command") {
    RunResult res = run_cli("cocycles 3 2");
    CHECK(res.code == 0);
    auto j = nlohmann::ordered_json::parse(res.out);
    REQUIRE(j.is_array());
    CHECK(j.size() == 3);
    CHECK(j[0]["cocycle"]["values"].size() == 3);
}

TEST_CASE("presentation command") {
    RunResult res = run_cli("presentation cyclic:2");
    CHECK(res.code == 0);
    CHECK(res.out.find("abelianization: Z+Z_2") != std::string::npos);
}

TEST_CASE("homology json is reproducible across thread counts modulo timings") {
    const std::string args = "homology cyclic:3 --n 1..3 --variant all --format json";
    RunResult a = run_cli(args + " --threads 1");
    RunResult b = run_cli(args + " --threads 4");
    CHECK(a.code == 0);
    CHECK(b.code == 0);
    CHECK(strip_elapsed(a.out) == strip_elapsed(b.out));
}
