#include <stdio.h>

int main() {
    unsigned int x = 4294967295;
    printf("Max unsigned: %u\n", x);
    x = x + 1;
    printf("Overflow ( + 1): %u\n", x);
    unsigned int y = 0;
    y = y - 1;
    printf("Underflow ( - 1): %u\n", y);
    unsigned int big = 3000000000u;
    unsigned int product = big * 2;
    printf("Product: %u\n", product);
    unsigned int half = y / 2;
    printf("Half: %u\n", half);
    return 0;
}
