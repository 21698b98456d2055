// End-to-end checks of the command line binary: exit codes, output shape,
// and byte-level determinism. Run as: cli_smoke <path-to-binary>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

int g_failures = 0;
int g_checks = 0;
std::string g_binary;

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run(const std::string& args, const std::string& env = "") {
    static int counter = 0;
    std::string path = "cli_smoke_out_" + std::to_string(counter++) + ".txt";
    std::string cmd = env + " " + g_binary + " " + args + " > " + path + " 2>&1";
    int raw = std::system(cmd.c_str());
    RunResult r;
    r.code = (raw != -1 && WIFEXITED(raw)) ? WEXITSTATUS(raw) : -1;
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    r.out = buf.str();
    std::remove(path.c_str());
    return r;
}

void check(bool ok, const std::string& what) {
    ++g_checks;
    if (!ok) {
        ++g_failures;
        std::cerr << "FAILED: " << what << "\n";
    }
}

void check_code(const RunResult& r, int expected, const std::string& what) {
    check(r.code == expected,
          what + " (exit " + std::to_string(r.code) + ", wanted " +
              std::to_string(expected) + ")\n--- output ---\n" + r.out);
}

bool contains(const RunResult& r, const std::string& needle) {
    return r.out.find(needle) != std::string::npos;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: cli_smoke <binary>\n";
        return 2;
    }
    g_binary = argv[1];

    // --- factor ---
    RunResult r = run("factor --n 4");
    check_code(r, 0, "factor --n 4");
    check(contains(r, "\"alpha\": \"12\""), "factor table reaches 12 at n = 4");
    check(contains(r, "\"alpha\": \"2\""), "factor table has 2 at n = 3");
    check_code(run("factor --n 0"), 2, "factor rejects n = 0");
    check_code(run("factor --n 9"), 2, "factor rejects n = 9");
    check_code(run("factor"), 2, "factor requires --n");

    // --- betti ---
    r = run("betti --n 2");
    check_code(r, 0, "betti --n 2");
    check(contains(r, "\"status\": \"PASS\""), "betti reports PASS");
    check(contains(r, "\"match\": true"), "betti matches the expected table");
    check_code(run("betti --n 9"), 2, "betti rejects n = 9");
    r = run("betti --n 2 --integral");
    check_code(r, 0, "betti --integral");
    check(contains(r, "nonunit_divisors"), "betti --integral reports divisors");

    // --- verify ---
    for (int n = 1; n <= 3; ++n)
        check_code(run("verify --n " + std::to_string(n)), 0, "verify small n");
    r = run("verify --n 6");
    check_code(r, 0, "verify --n 6");
    check(contains(r, "\"check\": \"basis_change\""), "verify covers the basis change");
    check(contains(r, "SKIPPED"), "verify marks out-of-range checks as skipped");
    check_code(run("verify --n 7"), 2, "verify rejects n = 7");

    // --- trace-wedge ---
    r = run("trace-wedge --n 2");
    check_code(r, 0, "trace-wedge --n 2");
    check(contains(r, "-6"), "trace-wedge n = 2 coefficient");
    r = run("trace-wedge --n 3");
    check_code(r, 0, "trace-wedge --n 3");
    check(contains(r, "360"), "trace-wedge n = 3 coefficient");
    check_code(run("trace-wedge --n 5"), 2, "trace-wedge rejects n = 5");

    // --- integrate ---
    r = run("integrate --n 1 --method quad --nodes 128");
    check_code(r, 0, "integrate quad n = 1");
    check(contains(r, "\"status\": \"PASS\""), "quadrature n = 1 passes tolerance");
    r = run("integrate --n 1 --method mc --samples 20000");
    check_code(r, 0, "integrate mc n = 1");
    check(contains(r, "\"seed\": 12345"), "default seed is 12345");
    r = run("integrate --n 1 --method mc --samples 20000", "GLVOL_SEED=99");
    check_code(r, 0, "integrate mc with env seed");
    check(contains(r, "\"seed\": 99"), "GLVOL_SEED overrides the default seed");
    r = run("integrate --n 1 --method mc --samples 20000 --seed 7", "GLVOL_SEED=99");
    check(contains(r, "\"seed\": 7"), "--seed overrides GLVOL_SEED");

    check_code(run("integrate --n 1 --method nope"), 2, "integrate rejects unknown method");
    check_code(run("integrate --n 3 --method quad"), 2, "quadrature capped at n = 2");
    check_code(run("integrate --n 1 --method mc --samples 10"), 2,
               "mc rejects tiny sample counts");

    // a huge finite-difference step wrecks the estimate: tolerance exit code
    r = run("integrate --n 1 --method quad --nodes 64 --fd-step 0.7");
    check_code(r, 4, "oversized fd step fails tolerance");
    check(contains(r, "\"status\": \"FAIL\""), "tolerance failure is reported");

    // --- report ---
    RunResult rep1 = run("report --max-n 3");
    RunResult rep2 = run("report --max-n 3");
    check_code(rep1, 0, "report --max-n 3");
    check(rep1.out == rep2.out, "report output is byte-identical across runs");
    check(contains(rep1, "\"alpha\": \"2\""), "report includes the factor column");
    r = run("report --max-n 4 --format markdown");
    check_code(r, 0, "report markdown");
    check(contains(r, "| n |"), "markdown header row");
    check(contains(r, "| 12 |") || contains(r, "| 12 "), "markdown factor value");
    check_code(run("report --max-n 9"), 2, "report rejects max-n = 9");

    // --- formats and misc ---
    r = run("factor --n 3 --format tsv");
    check_code(r, 0, "factor tsv");
    check(contains(r, "factor[2].alpha\t2"), "tsv flattening");
    check_code(run("factor --n 3 --format yaml"), 2, "unknown format rejected");
    check_code(run("bogus"), 2, "unknown subcommand rejected");
    check_code(run("--help"), 0, "--help exits cleanly");
    r = run("integrate --n 1 --method mc --samples 20000", "GLVOL_SEED=banana");
    check_code(r, 2, "malformed GLVOL_SEED is a configuration error");

    std::cout << g_checks << " checks, " << g_failures << " failures\n";
    return g_failures == 0 ? 0 : 1;
}
