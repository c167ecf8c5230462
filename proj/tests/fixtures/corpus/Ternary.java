public class Ternary {
    public static int maxOf(int a, int b) {
        int m = a > b ? a : b;
        return m;
    }

    public static int abs(int x) {
        int r;
        r = x < 0 ? -x : x;
        return r;
    }

    public static String label(boolean flag) {
        String s = flag ? "on" : "off";
        return s;
    }
}
