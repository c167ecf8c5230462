public class Accumulate {
    public static int scale(int v, int w) {
        return v * w;
    }

    public static int weighted(int a, int b, int c) {
        int s = 0;
        s = s + scale(a, 1);
        s = s + scale(b, 2);
        return s + c;
    }
}
