#include <stdio.h>

void describe(int n) {
    int score = 0;
    switch (n) {
    case 1:
        score += 1;
    case 2:
        score += 10;
        break;
    case 3:
        score += 100;
    default:
        score += 1000;
    }
    printf("n=%d score=%d\n", n, score);
}

int main() {
    int i;
    for (i = 0; i <= 4; i++) {
        describe(i);
    }
    return 0;
}
