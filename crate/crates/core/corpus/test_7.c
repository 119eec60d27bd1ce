#include <stdio.h>

typedef int (*BinaryOp)(int, int);

int add(int a, int b) {
    return a + b;
}

int multiply(int a, int b) {
    return a * b;
}

int apply(int (*op)(int, int), int x, int y) {
    return op(x, y);
}

int main() {
    int (*fp)(int, int) = add;
    printf("add via pointer: %d\n", fp(3, 4));
    fp = multiply;
    printf("multiply via pointer: %d\n", fp(3, 4));
    BinaryOp chosen = add;
    printf("apply add: %d\n", apply(chosen, 5, 6));
    printf("apply multiply: %d\n", apply(multiply, 5, 6));
    return 0;
}
