public class test_20 {
    **HINTS (IF NEEDED):**
    public static void main(String[] args) {
        int x = 2;
        switch (x) {
            case 1:
                System.out.println("one");
            case 2:
                System.out.println("two");
        }
    }
}
