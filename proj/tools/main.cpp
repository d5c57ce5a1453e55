#include <iostream>

#include "lab_cli.hpp"

int main(int argc, char** argv) {
  return bsqf::cli::run_lab(std::vector<std::string>(argv + 1, argv + argc),
                            std::cout, std::cerr);
}
