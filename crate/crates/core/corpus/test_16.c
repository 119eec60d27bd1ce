#include <stdio.h>

int counter = 0;
const int LIMIT = 3;
float scale = 1.5f;
char *label = "Counter";

void increment() {
    counter++;
}

int main() {
    int i;
    for (i = 0; i < LIMIT; i++) {
        increment();
    }
    printf("%s: %d\n", label, counter);
    scale = scale * 2;
    printf("Scale: %.1f\n", scale);
    counter = counter + 10;
    if (counter) {
        printf("Final %s: %d\n", label, counter);
    }
    return 0;
}
