public class test_19 {
    public static class Person {
        public char[] name = new char[50];
        public int age;
    }

    public static void main(String[] args) {
        Person p = new Person();
        strcpy(p.name, "Alice");
        p.age = 30;
        System.out.printf("%s (%d)\n", new String(p.name), p.age);
    }
}
