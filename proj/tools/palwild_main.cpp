#include "alloc_counter.hpp"
#include "palwild/cli.hpp"

int main(int argc, char** argv) {
  alloc_counter::install();
  return palwild::cli::main_entry(argc, argv);
}
