public class test_13 {
    public static void main(String[] args) {
        int i = 0;
        loop_start:
        do {
            System.out.printf("Iteration %d\n", i);
            i++;
        } while (false);
        System.out.println("Loop finished");
    }
}
