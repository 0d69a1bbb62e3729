#include <cstdio>

int main() {
    std::fprintf(stderr, "acceptance suite not implemented yet\n");
    return 1;
}
