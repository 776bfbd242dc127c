#include "cli.hpp"

int main(int argc, char** argv) { return tthue::cli::run(std::vector<std::string>(argv, argv + argc)); }
