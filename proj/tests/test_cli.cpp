#include "doctest.h"

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Result {
    int code = -1;
    std::string out;
};

Result run(const std::string& args) {
    std::string cmd = std::string(BMLAB_CLI) + " " + args + " 2>/dev/null";
    Result r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf{};
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string sample(const std::string& name) { return std::string(BMLAB_SAMPLES) + "/" + name; }

}  // namespace

TEST_CASE("exit codes") {
    CHECK(run("verify seven-dwarves").code == 0);
    CHECK(run("check-theta " + sample("theta_violation.bg")).code == 1);
    CHECK(run("classify " + sample("theta_violation.bg")).code == 2);
    CHECK(run("verify not-a-claim").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("").code == 2);
    CHECK(run("rank frame /nonexistent/file.bg").code == 2);
    CHECK(run("--bounds enum_rank=2 enumerate-reps " + sample("t2prime_frame.matroid") + " --q 4").code == 3);
    CHECK(run("verify allreps-contracted-tube --q 2").code == 1);
}

TEST_CASE("verify output") {
    auto r = run("verify seven-dwarves --json");
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["status"] == "pass");
    CHECK(j["counts"]["count"] == 7);

    auto lemma = run("verify lemma-2c3-frame --q 5");
    CHECK(lemma.code == 0);
    CHECK(lemma.out.find("pass") != std::string::npos);

    auto list = run("verify --list");
    CHECK(list.out.find("tangled-minor") != std::string::npos);
}

TEST_CASE("matrix, canonicalize and equivalence") {
    auto m = run("matrix frame " + sample("double_triangle_gf5.gg"));
    REQUIRE(m.code == 0);
    CHECK(m.out.rfind("rows 3 cols 6 field gf 5", 0) == 0);

    auto same = run("proj-equiv " + sample("double_triangle_frame.mat") + " " + sample("double_triangle_frame.mat"));
    CHECK(same.code == 0);
    auto j = nlohmann::json::parse(
        run("--json proj-equiv " + sample("double_triangle_frame.mat") + " " + sample("double_triangle_frame.mat")).out);
    CHECK(j["equivalent"] == true);
    CHECK(j["T"].get<std::string>().find("1 0 0\n0 1 0\n0 0 1") != std::string::npos);

    auto c = run("canonicalize " + sample("double_triangle_frame.mat") + " " + sample("double_triangle_gf5.bg") +
                 " --kind frame --json");
    REQUIRE(c.code == 0);
    auto cj = nlohmann::json::parse(c.out);
    CHECK(cj["status"] == "found");
    CHECK(cj["form"]["kind"] == "frame");

    CHECK(run("canonicalize " + sample("double_triangle_frame.mat") + " " + sample("double_triangle_gf5.bg") +
              " --kind lift")
              .code == 1);
    CHECK(run("switch-equiv " + sample("double_triangle_gf5.gg") + " " + sample("double_triangle_gf5.gg")).code == 0);
}

TEST_CASE("graph operations") {
    auto rank = run("rank lift \"T_0\" e1,e2,e3");
    CHECK(rank.code == 0);
    CHECK(rank.out == "3\n");
    auto dy = run("--json deltawye \"T_2'\" --at e1,e4,e6");
    REQUIRE(dy.code == 0);
    CHECK(nlohmann::json::parse(dy.out)["vertices"].size() == 4);
    CHECK(run("deltawye \"T_0\" --at e1,e4,e6").code == 1);  // the triangle is unbalanced
    auto ru = run("--json rollup \"D_{1,0}\" --vertex 1");
    REQUIRE(ru.code == 0);
    CHECK(nlohmann::json::parse(ru.out).size() == 3);
    CHECK(run("minor \"B_0\" --contract e3").code == 0);
    auto reps = run("--json enumerate-reps " + sample("u24.matroid") + " --q 4");
    CHECK(nlohmann::json::parse(reps.out)["count"] == 2);
}
