#include <iostream>

#include "arakelov/cli.hpp"

int main(int argc, char** argv)
{
    return arakelov::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
