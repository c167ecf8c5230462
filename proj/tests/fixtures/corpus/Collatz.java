public class Collatz {
    public static int steps(int n) {
        int s = 0;
        int v = n;
        while (v > 1 && s < 200) {
            if (v % 2 == 0) {
                v = v / 2;
            } else {
                v = 3 * v + 1;
            }
            s = s + 1;
        }
        return s;
    }
}
