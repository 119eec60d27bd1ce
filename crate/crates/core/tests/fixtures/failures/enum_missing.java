public class test_12 {
    public static void main(String[] args) {
        int s = IDLE;
        s = s + 1;
        if (s == STOPPED) {
            System.out.println("stopped");
        }
    }
}
