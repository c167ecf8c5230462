public class Tokens {
    public static String firstWord(String s) {
        if (s == null) {
            return null;
        }
        int sp = s.indexOf(" ");
        if (sp < 0) {
            return s;
        } else {
            return s.substring(0, sp);
        }
    }

    public static String upperFirst(String s) {
        if (s == null || s.isEmpty()) {
            return s;
        }
        return s.substring(0, 1).toUpperCase().concat(s.substring(1));
    }
}
