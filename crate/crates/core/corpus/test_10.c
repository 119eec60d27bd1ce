#include <stdio.h>
#include <stdlib.h>

void allocate_array(int **out, int size) {
    *out = (int *)malloc(size * sizeof(int));
    int i;
    for (i = 0; i < size; i++) {
        (*out)[i] = i * i;
    }
}

int main() {
    int *data = NULL;
    allocate_array(&data, 5);
    int i;
    for (i = 0; i < 5; i++) {
        printf("data[%d] = %d\n", i, data[i]);
    }
    free(data);
    return 0;
}
