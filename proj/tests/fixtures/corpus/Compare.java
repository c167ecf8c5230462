public class Compare {
    public static int compareLen(String a, String b) {
        if (a.length() > b.length()) {
            return 1;
        } else if (a.length() < b.length()) {
            return -1;
        } else {
            return a.compareTo(b);
        }
    }
}
