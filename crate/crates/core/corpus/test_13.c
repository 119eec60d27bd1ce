#include <stdio.h>

int main() {
    int count = 0;
loop_start:
    printf("Iteration %d\n", count);
    count++;
    if (count < 5) {
        goto loop_start;
    }
    printf("Done after %d iterations\n", count);
    return 0;
}
