#include <iostream>
#include <string>
#include <vector>

#include "mpdtsp/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return mpdtsp::cli::dispatch(args, std::cout, std::cerr);
}
