#include <vector>

#include "cantorsum/cli.hpp"

int main(int argc, char** argv) {
  return cantorsum::cli_main(std::vector<std::string>(argv + 1, argv + argc));
}
