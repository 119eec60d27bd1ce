public class test_5 {
    public static void main(String[] args) {
        long x = 4294967295L;
        System.out.printf("Max unsigned: %u\n", x);
    }
}
