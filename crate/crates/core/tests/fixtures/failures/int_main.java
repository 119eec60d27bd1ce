public class test_4 {
    public static int main(String[] args) {
        int i = 5;
        int j = 3;
        int k = i > j ? i : j;
        System.out.printf("k = %d, i = %d, j = %d\n", k, i, j);
        return 0;
    }
}
