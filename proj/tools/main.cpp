#include "cli.hpp"

int main(int argc, char** argv)
{
    return cullen::cli::run(argc, argv);
}
