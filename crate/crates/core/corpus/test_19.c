#include <stdio.h>
#include <string.h>

struct Address {
    char city[30];
    int zip;
};

struct Person {
    char name[50];
    int age;
    struct Address addr;
};

int main() {
    struct Person p;
    strcpy(p.name, "Alice");
    p.age = 30;
    strcpy(p.addr.city, "Paris");
    p.addr.zip = 75001;
    printf("%s (%d) lives in %s %d\n", p.name, p.age, p.addr.city, p.addr.zip);
    struct Person q = p;
    q.addr.zip = 10001;
    strcpy(q.addr.city, "NYC");
    printf("q: %s %d, p: %s %d\n", q.addr.city, q.addr.zip, p.addr.city, p.addr.zip);
    printf("Name length: %d\n", (int)strlen(p.name));
    return 0;
}
