#include <iostream>
#include <string>
#include <vector>

#include "fractile/cli.hpp"

int main(int argc, char** argv)
{
  std::vector<std::string> args(argv + 1, argv + argc);
  return fractile::cli::run(args, std::cout, std::cerr);
}
