public class test_14 {
    public static void main(String[] args) {
        char[] buf = new char[32];
        strcpy(buf, "Hello");
        strcat(buf, ", World");
        System.out.printf("%s (%d)\n", new String(buf), strlen(buf));
    }
}
