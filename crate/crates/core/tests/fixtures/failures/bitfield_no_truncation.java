public class test_8 {
    public static void main(String[] args) {
        int ready = 1;
        int mode = 5;
        int level = 9;
        int delta = -3;
        System.out.printf("ready=%d mode=%d level=%d delta=%d\n", ready, mode, level, delta);
        mode = 12;
        System.out.printf("mode after overflow=%d\n", mode);
    }
}
