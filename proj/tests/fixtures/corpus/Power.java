public class Power {
    public static int power(int base, int exp) {
        int result = 1;
        int e = Math.min(Math.max(exp, 0), 20);
        for (int i = 0; i < e; i = i + 1) {
            result = result * base;
        }
        return result;
    }
}
