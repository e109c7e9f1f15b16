// Acceptance suite: one line per criterion, failing checks listed under it.
#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "jamming/verify.hpp"

int main(int argc, char** argv) {
    CLI::App app{"acceptance checks"};
    std::string only;
    std::string json_out;
    jamming::verify::Options opt;
    app.add_option("--only", only, "criterion numbers or ids, comma separated");
    app.add_option("--seed", opt.seed, "master seed");
    app.add_option("--workers", opt.workers, "worker threads (0 = all cores)");
    app.add_option("--json", json_out, "write every check as a JSON line to this file");
    CLI11_PARSE(app, argc, argv);

    std::vector<const jamming::verify::Criterion*> selected;
    try {
        selected = jamming::verify::select(only);
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return 2;
    }
    std::ofstream json;
    if (!json_out.empty()) json.open(json_out);

    int failed = 0;
    for (const auto* c : selected) {
        const auto outcome = jamming::verify::run(*c, opt);
        std::size_t bad = 0;
        for (const auto& r : outcome.checks) bad += r.passed ? 0 : 1;
        std::printf("%s  criterion %2d  %-24s %4zu checks, %zu failed, %.1f s\n", outcome.passed ? "PASS" : "FAIL",
                    c->number, c->id.c_str(), outcome.checks.size(), bad, outcome.seconds);
        if (!outcome.error.empty()) std::printf("      error: %s\n", outcome.error.c_str());
        std::size_t shown = 0;
        for (const auto& r : outcome.checks) {
            if (json.is_open()) json << jamming::verify::to_json(r).dump() << '\n';
            if (r.passed || shown >= 12) continue;
            ++shown;
            std::printf("      %s: measured %.10g, target %.10g, tolerance %.3g\n", r.check_id.c_str(), r.measured,
                        r.target, r.tolerance);
        }
        std::fflush(stdout);
        failed += outcome.passed ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(selected.size()) - failed, selected.size());
    return failed == 0 ? 0 : 1;
}
