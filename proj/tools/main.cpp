#include <cstdio>

int main() {
    std::puts("ext2: CLI not wired up yet");
    return 1;
}
