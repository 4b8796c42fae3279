#include <vector>

#include "oscbound/cli.hpp"

int main(int argc, char **argv) {
  return oscbound::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
