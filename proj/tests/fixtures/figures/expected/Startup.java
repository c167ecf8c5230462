public class Startup {
    private int calls;

    void funcA() {
        calls = calls + 1;
    }

    int begin() {
        int n = 0;
        funcA();
        return n + calls;
    }
}
