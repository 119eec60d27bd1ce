Here is the translated Java code for the C program:
public class test_17 {
    public static void main(String[] args) {
        System.out.println("done");
    }
}
