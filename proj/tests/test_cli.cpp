#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "specball/matrix2.hpp"
#include "specball/pipeline_json.hpp"

#ifndef SPECBALL_BIN
#error "SPECBALL_BIN must point at the CLI binary"
#endif

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

int counter = 0;

std::string temp_path(const std::string &stem) {
    return "/tmp/specball_test_" + std::to_string(getpid()) + "_" +
           std::to_string(counter++) + "_" + stem;
}

std::string slurp(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

RunResult run(const std::string &args) {
    const std::string out_file = temp_path("stdout");
    const std::string cmd =
        std::string(SPECBALL_BIN) + " " + args + " > " + out_file + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_file);
    std::remove(out_file.c_str());
    return r;
}

} // namespace

TEST_CASE("cli verify: exit codes and report shape") {
    const std::string rep = temp_path("report.jsonl");
    const RunResult ok = run("verify --seed 7 --samples 60 --out " + rep);
    CHECK(ok.exit_code == 0);
    const std::string report = slurp(rep);
    std::size_t lines = 0;
    for (char c : report)
        if (c == '\n')
            ++lines;
    CHECK(lines >= 10);
    CHECK(report.find("\"check\":\"spectrum/diag_twist_t\"") != std::string::npos);
    std::remove(rep.c_str());

    CHECK(run("verify --samples 60").exit_code == 2); // missing --out

    const std::string rep2 = temp_path("report.jsonl");
    CHECK(run("verify --samples 30 --tol 1e-30 --out " + rep2).exit_code == 1);
    std::remove(rep2.c_str());
}

TEST_CASE("cli verify: determinism across runs and worker counts") {
    const std::string a = temp_path("a.jsonl");
    const std::string b = temp_path("b.jsonl");
    const std::string c = temp_path("c.jsonl");
    REQUIRE(run("verify --seed 11 --samples 80 --out " + a).exit_code == 0);
    REQUIRE(run("verify --seed 11 --samples 80 --out " + b).exit_code == 0);
    REQUIRE(run("verify --seed 11 --samples 80 --workers 4 --out " + c).exit_code == 0);
    const std::string ta = slurp(a);
    CHECK(ta == slurp(b));
    CHECK(ta == slurp(c));
    std::remove(a.c_str());
    std::remove(b.c_str());
    std::remove(c.c_str());
}

TEST_CASE("cli falsify verdicts") {
    const RunResult twist = run("falsify --phi [0,1]");
    CHECK(twist.exit_code == 0);
    CHECK(twist.out.find("\"verdict\":\"NotAConjugation\"") != std::string::npos);

    const RunResult constant = run("falsify --phi [0.3]");
    CHECK(constant.exit_code == 0);
    CHECK(constant.out.find("\"verdict\":\"ConjugationFound\"") != std::string::npos);

    const RunResult zero = run("falsify --phi []");
    CHECK(zero.exit_code == 0);
    CHECK(zero.out.find("\"verdict\":\"ConjugationFound\"") != std::string::npos);

    CHECK(run("falsify").exit_code == 2); // --phi required
    CHECK(run("falsify --phi nonsense").exit_code == 2);
}

TEST_CASE("cli fiber-scan") {
    const RunResult scan = run("fiber-scan --phi [0,1] --radius 2 --count 4");
    CHECK(scan.exit_code == 0);
    std::size_t lines = 0;
    for (char c : scan.out)
        if (c == '\n')
            ++lines;
    CHECK(lines == 5); // header + 4 rows
    CHECK(scan.out.rfind("re_lambda,im_lambda,re_f12,im_f12,re_f21,im_f21,residual_contrib",
                         0) == 0);

    // First row of a radius-1/4 scan starts at lambda = 1/4, where
    // f12 = e^{-1/16}/4.
    const RunResult quarter = run("fiber-scan --phi [0,1] --radius 0.25 --count 4");
    std::istringstream rows(quarter.out);
    std::string header, first;
    std::getline(rows, header);
    std::getline(rows, first);
    std::istringstream fields(first);
    std::string re_l, im_l, re_f12;
    std::getline(fields, re_l, ',');
    std::getline(fields, im_l, ',');
    std::getline(fields, re_f12, ',');
    CHECK(std::stod(re_l) == 0.25);
    CHECK(std::stod(im_l) == 0.0);
    CHECK(std::stod(re_f12) == doctest::Approx(0.25 * std::exp(-1.0 / 16.0)).epsilon(1e-15));

    // Identity twist: f12 column equals the lambda column exactly.
    const RunResult id_scan = run("fiber-scan --phi [] --radius 1.5 --count 6");
    std::istringstream id_rows(id_scan.out);
    std::getline(id_rows, header);
    std::string row;
    while (std::getline(id_rows, row)) {
        std::istringstream fs(row);
        std::string f[7];
        for (auto &v : f)
            std::getline(fs, v, ',');
        CHECK(f[0] == f[2]);
        CHECK(f[1] == f[3]);
    }
}

TEST_CASE("cli apply") {
    const std::string pipe = temp_path("pipe.json");
    const std::string mat = temp_path("mat.json");
    spit(mat, "[[[0.1,0],[0.2,0]],[[0.3,0],[0.4,0]]]");

    // Transpose twice is the identity, bit for bit.
    spit(pipe, R"([{"op":"transpose"},{"op":"transpose"}])");
    const RunResult twice = run("apply --pipeline " + pipe + " --input " + mat);
    CHECK(twice.exit_code == 0);
    CHECK(specball::parse_mat2_json(twice.out) ==
          specball::Mat2{0.1, 0.2, 0.3, 0.4});

    // Scalar rotation by i.
    spit(mat, "[[[0.5,0],[0,0]],[[0,0],[0,0]]]");
    spit(pipe, R"([{"op":"moebius","alpha":[0,0],"gamma":[0,1]}])");
    const RunResult rot = run("apply --pipeline " + pipe + " --input " + mat);
    CHECK(rot.exit_code == 0);
    const specball::Mat2 rotated = specball::parse_mat2_json(rot.out);
    CHECK(std::abs(rotated.x11 - specball::Complex{0.0, 0.5}) <= 1e-15);
    CHECK(std::abs(rotated.x22) <= 1e-15);

    // The diagonal twist example.
    spit(mat, "[[[0,0],[1,0]],[[0.1,0],[0,0]]]");
    spit(pipe, R"([{"op":"diag_twist","phi":[0,1]}])");
    const RunResult tw = run("apply --pipeline " + pipe + " --input " + mat +
                             " --check-roundtrip");
    CHECK(tw.exit_code == 0);
    const specball::Mat2 twisted = specball::parse_mat2_json(tw.out);
    CHECK(std::abs(twisted.x12 - std::exp(-0.1)) <= 1e-15);
    CHECK(std::abs(twisted.x21 - 0.1 * std::exp(0.1)) <= 1e-15);

    // Outside the ball: domain error, not usage error.
    spit(mat, "[[[2,0],[0,0]],[[0,0],[0,0]]]");
    CHECK(run("apply --pipeline " + pipe + " --input " + mat).exit_code == 1);

    // Malformed pipeline: usage error.
    spit(pipe, "garbage");
    spit(mat, "[[[0.1,0],[0.2,0]],[[0.3,0],[0.4,0]]]");
    CHECK(run("apply --pipeline " + pipe + " --input " + mat).exit_code == 2);

    std::remove(pipe.c_str());
    std::remove(mat.c_str());
}

TEST_CASE("cli seed precedence: flag over environment") {
    const std::string rep = temp_path("seeded.jsonl");
    const std::string base = "SPECTRAL_BALL_SEED=123 " + std::string(SPECBALL_BIN);
    const std::string out_file = temp_path("stdout");

    int status = std::system((base + " verify --samples 20 --out " + rep + " > " +
                              out_file + " 2>/dev/null")
                                 .c_str());
    REQUIRE(WIFEXITED(status));
    CHECK(slurp(rep).find("\"seed\":123") != std::string::npos);

    status = std::system((base + " verify --samples 20 --seed 9 --out " + rep + " > " +
                          out_file + " 2>/dev/null")
                             .c_str());
    REQUIRE(WIFEXITED(status));
    CHECK(slurp(rep).find("\"seed\":9") != std::string::npos);
    std::remove(rep.c_str());
    std::remove(out_file.c_str());
}
