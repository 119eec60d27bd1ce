#include <stdio.h>

union Converter {
    float f;
    int i;
};

int main() {
    union Converter c;
    c.f = 1.2f;
    printf("Float value: %f\n", c.f);
    printf("Integer bits: %d\n", c.i);
    printf("Hex bits: %x\n", c.i);
    return 0;
}
