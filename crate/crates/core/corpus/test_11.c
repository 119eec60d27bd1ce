#include <stdio.h>

int main() {
    unsigned char c = 250;
    int i;
    for (i = 0; i < 10; i++) {
        c++;
    }
    printf("Wrapped value: %d\n", c);
    unsigned char d = c - 5;
    printf("Below zero: %d\n", d);
    unsigned char bytes[3] = {200, 100, 255};
    int sum = 0;
    for (i = 0; i < 3; i++) {
        sum += bytes[i];
    }
    printf("Sum: %d\n", sum);
    return 0;
}
