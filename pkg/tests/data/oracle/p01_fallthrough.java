// grid: 0; 1; 2; 3; 4
public class Main {
    static void a(StringBuilder sb) { sb.append("a"); }
    static void b(StringBuilder sb) { sb.append("b"); }
    static void c(StringBuilder sb) { sb.append("c"); }

    public static void main(String[] args) {
        int x = Integer.parseInt(args[0]);
        StringBuilder sb = new StringBuilder();
        switch(x){case 1: a(sb); case 2: b(sb); break; default: c(sb);}
        System.out.println(x + ":" + sb);
    }
}
