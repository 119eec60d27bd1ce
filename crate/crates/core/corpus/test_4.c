#include <stdio.h>

#define MAX(a, b) ((a) > (b) ? (a) : (b))

int main() {
    int i = 5;
    int j = 3;
    int k = MAX(i++, j++);
    printf("k = %d, i = %d, j = %d\n", k, i, j);
    int m = MAX(10, 20);
    printf("m = %d\n", m);
    return 0;
}
