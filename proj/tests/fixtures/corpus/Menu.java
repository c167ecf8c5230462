public class Menu {
    public static int price(String item) {
        int p;
        switch (item) {
            case "tea":
                p = 3;
                break;
            case "coffee":
            case "mocha":
                p = 4;
                break;
            default:
                p = 0;
        }
        return p;
    }
}
