#include <iostream>

#include "diarykit/cli.hpp"

int main(int argc, char** argv) { return diarykit::run_cli(argc, argv, std::cout, std::cerr); }
