#include "weylglue/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
  return weylglue::run(argc, argv, std::cout, std::cerr);
}
