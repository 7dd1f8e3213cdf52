// Runs every manifest experiment grouped by acceptance criterion and prints
// one PASS/FAIL line per criterion. Details follow a failing line.

#include <chrono>
#include <cstdio>
#include <map>

#include "fusionq/repro.hpp"

using namespace fusionq;

int main() {
    std::map<int, std::vector<const repro::Experiment*>> by_criterion;
    for (const auto& e : repro::manifest())
        if (e.criterion > 0) by_criterion[e.criterion].push_back(&e);

    int failed = 0;
    for (const auto& [criterion, experiments] : by_criterion) {
        bool pass = true;
        double seconds = 0;
        std::string details;
        std::string titles;
        for (const auto* e : experiments) {
            const auto start = std::chrono::steady_clock::now();
            const auto outcome = repro::run(*e);
            const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            seconds += s;
            titles += (titles.empty() ? "" : "; ") + e->title;
            if (!outcome.error.empty()) details += "    " + e->name + ": error: " + outcome.error + "\n";
            for (const auto& c : outcome.checks)
                if (!c.pass)
                    details += "    " + e->name + ": " + c.label + ": computed " + c.computed + ", expected " +
                               c.expected + "\n";
            if (e->time_limit_s > 0 && s > e->time_limit_s) {
                char buf[96];
                std::snprintf(buf, sizeof buf, ": took %.2f s, limit %.0f s\n", s, e->time_limit_s);
                details += "    " + e->name + buf;
                pass = false;
            }
            pass = pass && outcome.pass();
        }
        std::printf("%s criterion %d: %s (%.2f s)\n", pass ? "PASS" : "FAIL", criterion, titles.c_str(), seconds);
        if (!pass) {
            std::fputs(details.c_str(), stdout);
            ++failed;
        }
    }
    std::printf("%d of %zu criteria passed\n", int(by_criterion.size()) - failed, by_criterion.size());
    return failed == 0 ? 0 : 1;
}
