#include <stdio.h>

int process(int value);

int process(int value) {
    int status = 0;
    printf("Start processing %d\n", value);
    if (value < 0) {
        status = -1;
        goto cleanup;
    }
    printf("Step 1 ok\n");
    if (value > 100) {
        status = -2;
        goto cleanup;
    }
    printf("Step 2 ok\n");
    status = value * 2;
cleanup:
    printf("Cleanup for %d\n", value);
    return status;
}

int main() {
    printf("Result: %d\n", process(10));
    printf("Result: %d\n", process(-5));
    printf("Result: %d\n", process(500));
    return 0;
}
