public class test_4 {
    public static int max(int a, int b) {
        return a > b ? a : b;
    }
}
