public class Main {
    public static void main(String[] args) {
        int[] arr = {10, 20, 30, 40, 50};
        int p_index = 0;
        System.out.printf("First element: %d\n", arr[p_index]);
    }
}
