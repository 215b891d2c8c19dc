// CLI round-trip tests; argv[1] is the path to the kakeya binary.
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "kakeya/io.hpp"

namespace {

int g_failures = 0;

#define EXPECT(cond)                                                          \
    do {                                                                      \
        if (!(cond)) {                                                        \
            ++g_failures;                                                     \
            std::cerr << "FAIL " << __FILE__ << ":" << __LINE__ << "  "       \
                      << #cond << "\n";                                       \
        }                                                                     \
    } while (0)

struct RunResult {
    int code;
    std::string out;
};

std::string g_cli;
std::string g_dir;

std::string slurp(const std::string& path) {
    std::ifstream is(path);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

RunResult run(const std::string& args) {
    std::string out_file = g_dir + "/stdout.txt";
    std::string cmd = g_cli + " " + args + " > " + out_file + " 2> " + g_dir +
                      "/stderr.txt";
    int status = std::system(cmd.c_str());
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, slurp(out_file)};
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: test_cli <path-to-kakeya-binary>\n";
        return 2;
    }
    g_cli = argv[1];
    char tmpl[] = "/tmp/kakeya-cli-XXXXXX";
    g_dir = mkdtemp(tmpl);

    // Construct + verify round trip.
    std::string md = g_dir + "/md.ps";
    RunResult c = run("construct --id missing-digit --q 3 --n 2 --out " + md);
    EXPECT(c.code == 0);
    nlohmann::json cj = nlohmann::json::parse(c.out);
    EXPECT(cj["size"] == 7);
    EXPECT(cj["predicted_size"] == "7");
    {
        kakeya::LoadedPointSet loaded = kakeya::load_pointset(md);
        EXPECT(loaded.set->card() == 7);
        EXPECT(loaded.field->q() == 3);
    }
    RunResult v = run("verify " + md + " --r 1");
    EXPECT(v.code == 0);
    EXPECT(nlohmann::json::parse(v.out)["result"] == "verified");

    // Universal construct + universality verification.
    std::string us = g_dir + "/us.ps";
    RunResult cu = run("construct --id universal --q 2 --n 4 --k 2 --out " + us);
    EXPECT(cu.code == 0);
    EXPECT(nlohmann::json::parse(cu.out)["size"] == 7);
    RunResult vu = run("verify " + us + " --universal 2");
    EXPECT(vu.code == 0);

    // Verification failure exits 1.
    std::string empty = g_dir + "/empty.ps";
    {
        kakeya::Field f = kakeya::Field::of_order(3);
        kakeya::PointSet s(f, 2);
        kakeya::save_pointset(empty, s);
    }
    RunResult ve = run("verify " + empty + " --r 1");
    EXPECT(ve.code == 1);
    EXPECT(nlohmann::json::parse(ve.out)["result"] == "failure");

    // Sampled mode reports distinctly and exits 0 without failures.
    RunResult vs = run("verify " + md + " --r 1 --samples 50 --seed 5");
    EXPECT(vs.code == 0);
    EXPECT(nlohmann::json::parse(vs.out)["result"] == "no-failure-in-sample");

    // I/O and parse errors exit 3.
    EXPECT(run("verify " + g_dir + "/missing.ps --r 1").code == 3);
    {
        std::ofstream os(g_dir + "/junk.ps");
        os << "not a pointset\n";
    }
    EXPECT(run("verify " + g_dir + "/junk.ps --r 1").code == 3);

    // Parameter errors exit 4.
    EXPECT(run("construct --id bogus --q 3 --n 2").code == 4);
    EXPECT(run("construct --id quadratic --q 2 --n 2").code == 4);
    EXPECT(run("construct --id missing-digit --q 6 --n 2").code == 4);

    // Lift through a file.
    RunResult lifted =
        run("construct --id lift --q 3 --n 3 --r 2 --r1 1 --in " + md);
    EXPECT(lifted.code == 0);
    EXPECT(nlohmann::json::parse(lifted.out)["size"] == 25);

    // Product with a full space.
    RunResult prod = run("construct --id product --q 3 --r 1 --extra 1 --in " + md);
    EXPECT(prod.code == 0);
    EXPECT(nlohmann::json::parse(prod.out)["size"] == 21);

    // Random rotation with the default seed verifies at q=3, n=3.
    RunResult rot = run("construct --id random-rotation --q 3 --n 3");
    EXPECT(rot.code == 0);
    nlohmann::json rj = nlohmann::json::parse(rot.out);
    EXPECT(rj["attempts"] >= 1);

    // Search certificate.
    RunResult sr = run("search --q 3 --n 2 --r 1");
    EXPECT(sr.code == 0);
    nlohmann::json sj = nlohmann::json::parse(sr.out);
    EXPECT(sj["minimum"] == "7");
    EXPECT(sj["certificate_verified"] == true);
    EXPECT(run("search --q 2 --n 5 --r 1 --budget 10").code == 2);

    // Poly battery.
    RunResult pc = run("polycheck --q 3 --trials 50 --seed 7");
    EXPECT(pc.code == 0);
    EXPECT(nlohmann::json::parse(pc.out)["all_pass"] == true);

    // ifset table.
    RunResult is = run("ifset --q 8 --f x^6+x^2");
    EXPECT(is.code == 0);
    EXPECT(nlohmann::json::parse(is.out)["max_size"] <= 6);

    // Bounds output.
    RunResult ba = run("bounds --q 3 --n 2 --r 1 --format csv");
    EXPECT(ba.code == 0);
    EXPECT(ba.out.rfind("bounds-atlas v1\n", 0) == 0);

    // Byte determinism: identical commands give identical bytes.
    std::string md2 = g_dir + "/md2.ps";
    RunResult c2 = run("construct --id missing-digit --q 3 --n 2 --out " + md2);
    EXPECT(slurp(md) == slurp(md2));
    {
        nlohmann::json a = nlohmann::json::parse(c.out);
        nlohmann::json b = nlohmann::json::parse(c2.out);
        a.erase("out");
        b.erase("out");
        EXPECT(a == b);
    }
    RunResult rot2 = run("construct --id random-rotation --q 3 --n 3");
    EXPECT(rot.out == rot2.out);
    EXPECT(run("bounds --q 2 --q 3 --n-max 3 --r-max 2 --format json").out ==
           run("bounds --q 2 --q 3 --n-max 3 --r-max 2 --format json").out);

    // Timing flag adds a field without breaking the rest.
    RunResult timed = run("--timing search --q 2 --n 2 --r 1");
    EXPECT(timed.code == 0);
    EXPECT(nlohmann::json::parse(timed.out).contains("elapsed_ms"));

    if (g_failures == 0) {
        std::cout << "test_cli: all checks passed\n";
        return 0;
    }
    std::cout << "test_cli: " << g_failures << " failures\n";
    return 1;
}
