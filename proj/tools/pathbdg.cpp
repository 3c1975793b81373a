#include "pathbdg/cli.hpp"

#include <iostream>

int main(int argc, char **argv)
{
	return pathbdg::run_cli(argc, argv, std::cout, std::cerr);
}
