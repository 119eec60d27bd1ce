public class test_9 {
    public static void print_value(Object data, char type) {
        if (type == 'i') {
            System.out.printf("Integer: %d\n", (Integer) data);
        }
    }

    public static int main(String[] args) {
        print_value(42, 'i');
        return 0;
    }
}
