#include <iostream>
#include <string>
#include <vector>

#include <monad_forge/cli.hpp>

int main(int argc, char **argv)
{
    std::vector<std::string> args(argv, argv + argc);
    return monad_forge::cli::run(args, std::cout, std::cerr);
}
