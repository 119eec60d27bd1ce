public class test_2 {
    public static class Point {
        public int x;
        public int y;

        public Point(int x, int y) {
            this.x = x;
            this.y = y;
        }
    }

    public static void move_copy(Point p) {
        p.x += 100;
    }

    public static void main(String[] args) {
        Point p = new Point(1, 2);
        move_copy(p);
        System.out.printf("After move_copy: (%d, %d)\n", p.x, p.y);
    }
}
