#include <iostream>

#include "rgpert/cli.hpp"

int main(int argc, char** argv)
{
	std::vector<std::string> args(argv + 1, argv + argc);
	return rgpert::run_cli(args, std::cout, std::cerr);
}
