import java.util.HashSet;
import java.util.LinkedHashSet;
import java.util.Set;

public class Registry {
    private Set<String> active = new LinkedHashSet<>();
    private Set<String> retired;

    public Registry() {
        retired = new HashSet<>();
    }

    public void register(String name) {
        if (!retired.contains(name)) {
            active.add(name);
        } else {
        }
    }

    public void retire(String name) {
        active.remove(name);
        retired.add(name);
    }

    public void drain() {
        while (!active.isEmpty()) {
            active.clear();
        }
    }

    public void reset() {
        active.clear();
        retired.clear();
    }
}
