#include <cstdlib>
#include <iostream>

#include "structcode/acceptance.hpp"

int main(int argc, char** argv) {
    structcode::AcceptanceConfig cfg;
    if (argc > 1) cfg.seed = std::strtoull(argv[1], nullptr, 10);
    bool all = true;
    for (const auto& criterion : structcode::acceptance_criteria()) {
        const auto r = criterion(cfg);
        std::cout << r.line() << std::endl;
        for (std::size_t i = 0; i < r.findings.size() && i < 5; ++i) std::cout << "  finding: " << r.findings[i] << "\n";
        all = all && r.pass;
    }
    return all ? 0 : 1;
}
