#include <iostream>

#include "certnorm/cli_app.hpp"

int main(int argc, char** argv) {
  return certnorm::cli::run(argc, argv, std::cout, std::cerr);
}
