public class Toggle {
    public static boolean flip(boolean b, boolean c) {
        if (!b) {
            return c;
        } else {
            return !c;
        }
    }
}
