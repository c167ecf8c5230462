public class Loops {
    public static int sumSquares(int n) {
        int limit = Math.min(n, 100);
        int s = 0;
        for (int i = 0; i < limit; i = i + 1) {
            s = s + i * i;
        }
        return s;
    }

    public static int countDigits(int n) {
        int count = 1;
        int v = n / 10;
        while (v != 0) {
            v = v / 10;
            count = count + 1;
        }
        return count;
    }

    public static int firstSpace(String s) {
        if (s == null) {
            return -1;
        }
        int i = 0;
        while (i < s.length()) {
            if (s.substring(i, i + 1).equals(" ")) {
                return i;
            }
            i = i + 1;
        }
        return -1;
    }
}
