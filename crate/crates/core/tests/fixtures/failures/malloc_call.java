public class test_15 {
    public static void main(String[] args) {
        int n = 5;
        int[] arr = (int[]) malloc(n * 4);
        for (int i = 0; i < n; i++) {
            arr[i] = i * 10;
        }
        System.out.printf("arr[2] = %d\n", arr[2]);
    }
}
