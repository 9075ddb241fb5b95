#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "stablewave/errors.hpp"
#include "stablewave/harness.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        const auto cfg = stablewave::parse_cli(args);
        return stablewave::run(cfg);
    } catch (const stablewave::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const stablewave::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return 3;
    } catch (const stablewave::IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
