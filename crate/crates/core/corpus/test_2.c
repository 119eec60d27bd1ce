#include <stdio.h>

struct Point {
    int x;
    int y;
};

void move(struct Point *p) {
    p->x += 10;
    p->y += 10;
}

void move_copy(struct Point p_val) {
    p_val.x += 100;
    printf("Inside move_copy: (%d, %d)\n", p_val.x, p_val.y);
}

int main() {
    struct Point p1 = {1, 2};
    move(&p1);
    printf("After move: (%d, %d)\n", p1.x, p1.y);
    move_copy(p1);
    printf("After move_copy: (%d, %d)\n", p1.x, p1.y);
    struct Point p2 = p1;
    p2.y = 0;
    printf("Copy: (%d, %d) original: (%d, %d)\n", p2.x, p2.y, p1.x, p1.y);
    return 0;
}
