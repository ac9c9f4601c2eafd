#include "cubicsep/report.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return cubicsep::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
