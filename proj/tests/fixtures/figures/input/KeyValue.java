package org.example.config;

public class KeyValue {
    private String key;
    private int weight;

    public KeyValue(String key, int weight) {
        this.key = key;
        this.weight = weight;
    }

    public boolean sameType(Object value) {
        if (value == null) {
            return false;
        }
        return value.getClass().equals(getClass());
    }

    public int getWeight() {
        return weight;
    }
}
