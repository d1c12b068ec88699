#include "irsa/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return irsa::run_cli(argc, argv, std::cout, std::cerr);
}
