public class Codes {
    public static String status(int code) {
        String text;
        if (code == 200) {
            text = "ok";
        } else if (code == 404) {
            text = "missing";
        } else if (code == 500) {
            text = "error";
        } else {
            text = "other";
        }
        return text;
    }

    public static int weight(String unit) {
        int w = 0;
        if (unit.equals("kg")) {
            w = 1000;
        } else if (unit.equals("g")) {
            w = 1;
        }
        return w;
    }
}
