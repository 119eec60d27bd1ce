public class test_7 {
    public static int add(int a, int b) {
        return a + b;
    }

    public static void main(String[] args) {
        IntBinaryOperator op = test_7::add;
        System.out.printf("add: %d\n", op.applyAsInt(3, 4));
    }
}
