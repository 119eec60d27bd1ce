#include <stdio.h>

int main() {
    int arr[5] = {10, 20, 30, 40, 50};
    int *p = arr;

    printf("First element: %d\n", *p);
    p++;
    printf("Second element: %d\n", *p);
    printf("Fourth element: %d\n", *(p + 2));
    *p = 99;
    printf("Updated array: %d %d %d\n", arr[0], arr[1], arr[2]);
    return 0;
}
