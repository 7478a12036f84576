#include <algorithm>
#include <iostream>

#include "stubpair/acceptance.hpp"

int main() {
    try {
        const auto results = stubpair::run_acceptance(std::cout);
        const bool ok = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass; });
        std::cout << (ok ? "all criteria pass" : "some criteria FAIL") << '\n';
        return ok ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
