public class Fizz {
    public static String fizz(int n) {
        String r;
        if (n % 15 == 0) {
            r = "FizzBuzz";
        } else if (n % 3 == 0) {
            r = "Fizz";
        } else if (n % 5 == 0) {
            r = "Buzz";
        } else {
            r = String.valueOf(n);
        }
        return r;
    }
}
