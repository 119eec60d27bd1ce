#include <stdio.h>

struct Record {
    int id;
    double score;
    char tag;
};

int main() {
    int arr[10];
    printf("sizeof(char) = %zu\n", sizeof(char));
    printf("sizeof(int) = %d\n", (int)sizeof(int));
    printf("sizeof(double) = %d\n", (int)sizeof(double));
    printf("sizeof(int *) = %d\n", (int)sizeof(int *));
    printf("sizeof(struct Record) = %d\n", (int)sizeof(struct Record));
    printf("array bytes = %d\n", (int)sizeof(arr));
    printf("array length = %d\n", (int)(sizeof(arr) / sizeof(arr[0])));
    return 0;
}
