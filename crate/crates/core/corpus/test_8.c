#include <stdio.h>

struct Flags {
    unsigned int ready : 1;
    unsigned int mode : 3;
    unsigned int level : 4;
    int delta : 4;
};

int main() {
    struct Flags f = {1, 5, 9, -3};
    printf("ready=%d mode=%d level=%d delta=%d\n", f.ready, f.mode, f.level, f.delta);
    f.mode = f.mode + 6;
    f.level = f.level + 10;
    f.ready = f.ready + 1;
    f.delta = f.delta - 6;
    printf("ready=%d mode=%d level=%d delta=%d\n", f.ready, f.mode, f.level, f.delta);
    return 0;
}
