#include <string>
#include <vector>

#include "fstefan/cli.hpp"

int main(int argc, char** argv)
{
  return fstefan::run_command(std::vector<std::string>(argv + 1, argv + argc));
}
