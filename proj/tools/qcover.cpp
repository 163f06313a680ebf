#include <iostream>

#include "qcover/cli.hpp"

int main(int argc, char** argv) {
  return qcover::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
