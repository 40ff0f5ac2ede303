#include "runners.hpp"

int main(int argc, char** argv) {
  return cornerheat::cli::cli_main(argc, argv);
}
