// Acceptance runner: one PASS/FAIL line per criterion. Criterion 14 drives the CLI
// binary given as the first argument.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sys/wait.h>

#include "slipline/slipline.hpp"

using namespace slipline;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(is)), {});
}

int run(const std::string& cmd) {
    const int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

void print(const verify::Criterion& c) {
    std::cout << "criterion " << c.id << ": " << (c.pass() ? "PASS" : "FAIL") << "  " << c.title << "  ("
              << c.checks.size() << " checks";
    const auto bad = verify::failures(c);
    for (const auto* f : bad)
        std::cout << "; failed: " << f->name << " = " << fmt(f->value) << ' ' << f->relation << ' ' << fmt(f->threshold);
    std::cout << ")\n";
}

verify::Criterion cli_determinism(const std::string& lab) {
    verify::Criterion c{14, "CLI determinism and verify --all runtime", {}, 0.0};
    if (lab.empty() || !fs::exists(lab)) {
        c.fail("CLI binary available", "pass the slipline_lab path as the first argument");
        return c;
    }
    const fs::path dir = fs::temp_directory_path() / ("slipline_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const std::string q = "'" + lab + "'";
    const std::vector<std::pair<std::string, std::string>> jobs{
        {"sample.csv", "sample --solution prandtl --region -2,2,-0.99,0.99 --n 100"},
        {"sample.json", "sample --solution nadai_two_circles --n 30 --format json"},
        {"lines.csv", "sliplines --solution nadai_two_circles --params '{\"a\":2,\"b\":2.8284271247461903}'"},
        {"lines.svg", "sliplines --solution spiral --format svg"},
        {"env.csv", "envelope --solution revuzhenko --params '{\"sign\":-1}'"},
        {"stream.csv", "streamlines --solution yakhno"},
        {"vel.json", "velocity --solution theta2 --params '{\"branch\":\"smooth\"}' --format json"},
    };
    bool same = true, ok = true;
    for (const auto& [file, args] : jobs) {
        for (int rep = 0; rep < 2; ++rep) {
            const fs::path out = dir / (std::to_string(rep) + "_" + file);
            if (run(q + " " + args + " --out '" + out.string() + "' 2>/dev/null") != 0) ok = false;
        }
        const std::string a = slurp(dir / ("0_" + file)), b = slurp(dir / ("1_" + file));
        if (a.empty() || a != b) same = false;
    }
    c.flag("all export commands exit 0", ok);
    c.flag("repeated exports byte-identical", same);

    double worst = 0.0;
    int codes = 0;
    for (int rep = 0; rep < 2; ++rep) {
        const auto t0 = std::chrono::steady_clock::now();
        codes |= run(q + " verify --all --out '" + (dir / ("report" + std::to_string(rep) + ".json")).string() +
                     "' >/dev/null 2>&1");
        worst = std::max(worst, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    c.flag("verify --all exits 0", codes == 0);
    c.flag("verify --all reports byte-identical",
           slurp(dir / "report0.json") == slurp(dir / "report1.json") && !slurp(dir / "report0.json").empty());
    c.le("verify --all wall time [s]", worst, 60.0);
    fs::remove_all(dir);
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    const std::string lab = argc > 1 ? argv[1] : "";
    verify::Options o;
    bool all = true;
    for (int id = 1; id <= 13; ++id) {
        const auto t0 = std::chrono::steady_clock::now();
        verify::Criterion c;
        try {
            c = verify::run_criterion(id, o);
        } catch (const std::exception& e) {
            c = verify::Criterion{id, "criterion " + std::to_string(id), {}, 0.0};
            c.fail("no exception", e.what());
        }
        c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        print(c);
        all = all && c.pass();
    }
    const auto c14 = cli_determinism(lab);
    print(c14);
    all = all && c14.pass();
    std::cout << (all ? "ALL PASS" : "SOME CRITERIA FAILED") << '\n';
    return all ? 0 : 1;
}
