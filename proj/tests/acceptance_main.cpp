#include <iostream>

#include "tdk/acceptance.hpp"

int main()
{
    int failed = 0;
    for (const auto& r : tdk::run_acceptance()) {
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.id << "  " << r.title;
        if (!r.pass)
            std::cout << "  (" << r.detail << ")";
        std::cout << '\n';
        failed += r.pass ? 0 : 1;
    }
    std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << '\n';
    return failed ? 1 : 0;
}
