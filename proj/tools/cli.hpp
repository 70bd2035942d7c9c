#pragma once

namespace cullen::cli {

// 0 ok, 1 verify mismatch, 2 bad input, 3 internal or numerical failure.
int run(int argc, char** argv);

}  // namespace cullen::cli
