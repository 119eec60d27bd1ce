public class test_11 {
    public static void main(String[] args) {
        int c = 250;
        for line in lines:
            c = c + 1
        System.out.printf("Wrapped value: %d\n", c & 0xFF);
    }
}
