#include <ksoliton/cli.hpp>

#include <iostream>

int main(int argc, char** argv) { return ksol::cli::run(argc, argv, std::cout, std::cerr); }
