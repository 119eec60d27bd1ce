public class test_18 {
    public static void main(String[] args) {
        int[] arr = new int[10];
        System.out.printf("Size of int: %d\n", sizeof(int));
        System.out.printf("Elements: %d\n", arr.length);
    }
}
