#include <stdio.h>

void print_value(void *data, char type) {
    if (type == 'i') {
        int *ip = (int *)data;
        printf("Integer: %d\n", *ip);
    } else if (type == 'f') {
        float *fp = (float *)data;
        printf("Float: %.2f\n", *fp);
    } else if (type == 'c') {
        char *cp = (char *)data;
        printf("Char: %c\n", *cp);
    }
}

int main() {
    int i = 42;
    float f = 3.14f;
    char c = 'A';
    print_value(&i, 'i');
    print_value(&f, 'f');
    print_value(&c, 'c');
    return 0;
}
