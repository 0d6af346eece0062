#include <string>
#include <vector>

#include "rbcenter/io.hpp"

int main(int argc, char** argv) {
    return rbcenter::run(std::vector<std::string>(argv + 1, argv + argc));
}
