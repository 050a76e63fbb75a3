#include <iostream>
#include <string>
#include <vector>

#include "tcore/cli/app.hpp"

int main(int argc, char** argv) {
  return tcore::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
