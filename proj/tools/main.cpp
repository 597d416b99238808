#include <string>
#include <vector>

#include "uwsnn/cli.hpp"

int main(int argc, char** argv) {
  return uwsnn::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
