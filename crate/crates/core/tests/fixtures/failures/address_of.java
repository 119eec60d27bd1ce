public class test_2 {
    public static class Point {
        public int x;
        public int y;
    }

    public static void move(Point p) {
        p.x += 10;
        p.y += 10;
    }

    public static void main(String[] args) {
        Point p1 = new Point();
        move(&p1);
        System.out.printf("%d %d\n", p1.x, p1.y);
    }
}
