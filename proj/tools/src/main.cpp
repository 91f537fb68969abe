#include <iostream>
#include <string>
#include <vector>

#include "dmuss/cli/app.hpp"

int main(int argc, char** argv) {
  return dmuss::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
