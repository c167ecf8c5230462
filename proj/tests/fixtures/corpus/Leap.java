public class Leap {
    public static boolean isLeap(int year) {
        boolean leap;
        if (year % 400 == 0) {
            leap = true;
        } else if (year % 100 == 0) {
            leap = false;
        } else {
            leap = year % 4 == 0;
        }
        return leap;
    }
}
