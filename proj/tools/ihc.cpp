#include "ihc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ihc::cli::run(args, std::cout, std::cerr);
}
