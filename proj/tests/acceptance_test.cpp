// Acceptance suite: one PASS/FAIL line per criterion on stdout, timings on
// stderr. Options: --quick, --only N (repeatable), --jobs J.
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include "spreadlab/acceptance.hpp"

int main(int argc, char** argv) {
    spreadlab::AcceptOptions opt;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--quick") {
            opt.quick = true;
        } else if (a == "--only" && i + 1 < argc) {
            opt.only.push_back(std::atoi(argv[++i]));
        } else if (a == "--jobs" && i + 1 < argc) {
            opt.jobs = static_cast<unsigned>(std::atoi(argv[++i]));
        } else {
            std::cerr << "usage: acceptance_test [--quick] [--only N]... [--jobs J]\n";
            return 2;
        }
    }
    opt.on_result = [](const spreadlab::CriterionResult& r) {
        std::cout << r.line() << std::endl;
        std::fprintf(stderr, "criterion %d took %.1f s\n", r.id, r.seconds);
    };
    bool ok = true;
    for (const auto& r : spreadlab::run_acceptance(opt)) ok = ok && r.pass;
    return ok ? 0 : 1;
}
