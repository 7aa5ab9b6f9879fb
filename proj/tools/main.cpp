#include <iostream>

#include "tdk/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    tdk::CliResult r = tdk::run_cli(args);
    std::cout << r.out;
    if (!r.err.empty())
        std::cerr << r.err << '\n';
    return r.exit_code;
}
