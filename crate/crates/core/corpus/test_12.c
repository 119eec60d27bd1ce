#include <stdio.h>

enum State { IDLE, RUNNING, PAUSED, STOPPED };
enum Level { LOW = 1, MID = 5, HIGH };

int main() {
    enum State s = IDLE;
    while (s != STOPPED) {
        printf("State value: %d\n", s);
        s = s + 1;
    }
    printf("Final state: %d\n", s);
    enum Level l = MID;
    l = l + 1;
    printf("Level after MID: %d (HIGH is %d)\n", l, HIGH);
    if (l == HIGH) {
        printf("Reached HIGH\n");
    }
    return 0;
}
