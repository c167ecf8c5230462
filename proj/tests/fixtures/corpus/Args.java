public class Args {
    public static int longer(String a, String b) {
        return Math.max(a.length(), b.length());
    }

    public static boolean pathCheck(String pathToCheck, String parentPath) {
        return pathToCheck.startsWith(parentPath.trim());
    }

    public static String shout(String s) {
        String t = s.toUpperCase();
        return "!".concat(t);
    }
}
