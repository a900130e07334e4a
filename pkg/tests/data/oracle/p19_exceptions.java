// grid: 0; 1; 2; 3
public class Main {
    static int risky(int x) {
        if (x == 1) {
            throw new IllegalStateException("bad one");
        }
        if (x == 2) {
            throw new IllegalArgumentException("bad two");
        }
        return 10 / x;
    }

    public static void main(String[] args) {
        int x = Integer.parseInt(args[0]);
        StringBuilder log = new StringBuilder();
        try {
            log.append(risky(x));
        } catch (IllegalStateException e) {
            log.append("ise:" + e.getMessage());
        } catch (ArithmeticException e) {
            log.append("arith");
        } finally {
            log.append(";done");
        }
        System.out.println(log);
        if (x == 2) {
            risky(x);
        }
        System.exit(x);
    }
}
