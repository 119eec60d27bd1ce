#include <stdio.h>
#include <stdlib.h>

struct Node {
    int value;
    struct Node *next;
};

int main() {
    struct Node *head = NULL;
    int i;
    for (i = 1; i <= 3; i++) {
        struct Node *n = (struct Node *)malloc(sizeof(struct Node));
        n->value = i * 10;
        n->next = head;
        head = n;
    }
    struct Node *cur = head;
    while (cur != NULL) {
        printf("Node value: %d\n", cur->value);
        cur = cur->next;
    }
    int *nums = (int *)malloc(4 * sizeof(int));
    for (i = 0; i < 4; i++) {
        nums[i] = i + 1;
    }
    printf("Sum: %d\n", nums[0] + nums[1] + nums[2] + nums[3]);
    free(nums);
    while (head != NULL) {
        struct Node *next = head->next;
        free(head);
        head = next;
    }
    printf("Freed all nodes\n");
    return 0;
}
