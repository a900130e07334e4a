// grid: 0 1 2 3 4; -1 7; 2 2 1
public class Main {
    static String pick(int x) {
        StringBuilder out = new StringBuilder();
        switch (x) {
            case 1:
                out.append("one");
                break;
            case 2:
                out.append("two");
                break;
            case 3:
                out.append("three");
                break;
        }
        return out.toString();
    }

    public static void main(String[] args) {
        for (String a : args) {
            System.out.println(a + " -> " + pick(Integer.parseInt(a)));
        }
    }
}
