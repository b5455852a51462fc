#include "afc/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return afc::run_cli(argc, argv, std::cout, std::cerr);
}
