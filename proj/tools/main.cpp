#include "cli_app.hpp"

int main(int argc, char** argv) { return haarframe::cli::run(argc, argv, std::cout, std::cerr); }
