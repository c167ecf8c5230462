public class Ranges {
    public static boolean inRange(int x, int lo, int hi) {
        return x >= lo && x <= hi ? true : false;
    }

    public static int width(int lo, int hi) {
        boolean ok = lo <= hi;
        int w = hi - lo;
        return ok ? w : -w;
    }
}
