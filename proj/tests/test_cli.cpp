#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

TEST_SUITE("cli") {

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

std::string cli_path() {
    const char* p = std::getenv("APSYM_CLI");
    REQUIRE_MESSAGE(p != nullptr, "APSYM_CLI must point at the apsym binary");
    return p;
}

RunResult run(const std::string& args) {
    std::string cmd = cli_path() + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

} // namespace

TEST_CASE("list-builtins") {
    RunResult r = run("list-builtins");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("schwarzschild\n") != std::string::npos);
    CHECK(r.out.find("gup\n") != std::string::npos);
}

TEST_CASE("solve reports the schwarzschild generators") {
    RunResult r = run("solve schwarzschild --order 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("nontrivial (2)") != std::string::npos);
    CHECK(r.out.find("integral") != std::string::npos);
}

TEST_CASE("solve defaults to the case's perturbation order") {
    RunResult r = run("solve reissner-nordstrom");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("== order 2 ==") != std::string::npos);
}

TEST_CASE("conditions prints the generic residual") {
    RunResult r = run("conditions quadratic --order 1");
    CHECK(r.exit_code == 0);
    // At order 1 the G1 partials are weighted by the order-0 components
    // (eta0 = c2 u cos2phi + ... + c4 sin phi + c5 cos phi).
    CHECK(r.out.find("a0*c4*u*sin(phi)") != std::string::npos);
    CHECK(r.out.find("a1*c5*cos(phi)") != std::string::npos);
    // the fresh generator acts on L0 and the gauge block is D A1
    CHECK(r.out.find("eta1*u") != std::string::npos);
    CHECK(r.out.find("ga1_phi") != std::string::npos);
    CHECK(r.out.find("ga1_u*up") != std::string::npos);

    // One order up, eta1 multiplies dG1/du = a0 u + a1.
    RunResult r2 = run("conditions quadratic --order 2");
    CHECK(r2.exit_code == 0);
    CHECK(r2.out.find("a0*eta1*u") != std::string::npos);
    CHECK(r2.out.find("a1*eta1") != std::string::npos);
}

TEST_CASE("machine format emits a json document") {
    RunResult r = run("solve schwarzschild --order 1 --format machine");
    CHECK(r.exit_code == 0);
    CHECK(r.out.front() == '{');
    CHECK(r.out.find("\"stages\"") != std::string::npos);
    CHECK(r.out.find("\"nontrivial\":2") != std::string::npos);
}

TEST_CASE("reports are byte-identical across runs") {
    RunResult a = run("solve orbital --order 2 --format machine");
    RunResult b = run("solve orbital --order 2 --format machine");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    RunResult c = run("verify schwarzschild");
    RunResult d = run("verify schwarzschild");
    CHECK(c.exit_code == 0);
    CHECK(c.out == d.out);
}

TEST_CASE("exit code 2 on input errors") {
    CHECK(run("solve no-such-case").exit_code == 2);
    std::string path = "/tmp/apsym_cli_bad.case";
    {
        std::ofstream out(path);
        out << "[case]\nlabel = bad\n[lagrangian]\ng1 = u +\n";
    }
    CHECK(run("solve " + path).exit_code == 2);
    std::remove(path.c_str());
}

TEST_CASE("exit code 3 on basis overflow") {
    RunResult r = run("solve quadratic --order 1 --basis-m 1");
    CHECK(r.exit_code == 3);
    CHECK(r.out.find("basis overflow") != std::string::npos);
}

TEST_CASE("exit code 4 when verification is refused") {
    RunResult r = run("verify gup");
    CHECK(r.exit_code == 4);
    CHECK(r.out.find("refused") != std::string::npos);
}

TEST_CASE("verify reports drift ratios near the expected powers") {
    RunResult r = run("verify schwarzschild");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("drift ratios") != std::string::npos);
    CHECK(r.out.find("expect ~4") != std::string::npos);
}

} // TEST_SUITE
