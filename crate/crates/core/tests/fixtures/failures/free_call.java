public class test_15 {
    public static void main(String[] args) {
        int[] arr = new int[5];
        arr[2] = 20;
        System.out.printf("arr[2] = %d\n", arr[2]);
        free(arr);
    }
}
