public class Countdown {
    public static String countdown(int n) {
        int k = Math.min(Math.abs(n), 50);
        String out = "";
        while (k > 0) {
            out = out.concat(String.valueOf(k));
            k = k - 1;
        }
        return out;
    }
}
