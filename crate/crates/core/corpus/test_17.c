#include <stdio.h>

#define SWAP(a, b) do { \
        int tmp = (a);  \
        (a) = (b);      \
        (b) = tmp;      \
    } while (0)

#define SQUARE(x) ((x) * (x))

int main() {
    int x = 3, y = 7;
    SWAP(x, y);
    printf("x = %d, y = %d\n", x, y);
    printf("square = %d\n", SQUARE(x + 1));
    return 0;
}
