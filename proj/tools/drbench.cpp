#include <string>
#include <vector>

#include "drbench/cli.hpp"

int main(int argc, char** argv) { return drbench::dispatch(std::vector<std::string>(argv, argv + argc)); }
