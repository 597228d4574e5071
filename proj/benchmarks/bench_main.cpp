#include <benchmark/benchmark.h>

// The distro's libbenchmark_main.a carries LTO bytecode from another gcc.
BENCHMARK_MAIN();
