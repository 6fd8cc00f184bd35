#include "trustsim/cli.hpp"

int main(int argc, char** argv) { return trustsim::cli::run_main(argc, argv); }
