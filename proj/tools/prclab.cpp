#include "prclab/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    try {
        const auto cfg = prclab::cli::parse(argc, argv, std::cerr);
        if (!cfg) return prclab::cli::kOk;
        return prclab::cli::execute(*cfg, std::cout, std::cerr);
    } catch (const prclab::cli::UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return prclab::cli::kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
