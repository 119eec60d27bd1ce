#include <stdio.h>
#include <string.h>

int main() {
    char greeting[50];
    strcpy(greeting, "Hello");
    strcat(greeting, ", ");
    strcat(greeting, "World");
    printf("Message: %s\n", greeting);
    printf("Length: %d\n", (int)strlen(greeting));
    char name[20] = "Java";
    strcat(name, "Script");
    printf("%s has %d chars\n", name, (int)strlen(name));
    return 0;
}
