public class Clamp {
    public static int clamp(int x, int lo, int hi) {
        int r;
        if (x < lo) {
            r = lo;
        } else {
            r = x > hi ? hi : x;
        }
        return r;
    }

    public static int sign(int x) {
        if (x > 0) {
            return 1;
        } else if (x < 0) {
            return -1;
        } else {
            return 0;
        }
    }
}
