public class Parity {
    public static String parityName(int x) {
        String name;
        int m = x % 2;
        switch (m) {
            case 0:
                name = "even";
                break;
            case 1:
            case -1:
                name = "odd";
                break;
            default:
                name = "unknown";
        }
        return name;
    }
}
