public class test_16 {
    public static int counter = 0;

    public static void main(String[] args) {
        counter = 3;
        if (counter) {
            System.out.printf("counter = %d\n", counter);
        }
    }
}
