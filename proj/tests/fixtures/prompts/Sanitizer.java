package org.example.web;

public class Sanitizer {
    /** Strips a leading slash. */
    public static String relative(String path) {
        if (path == null) {
            return "";
        }
        String trimmed = path.trim();
        if (trimmed.startsWith("/")) {
            trimmed = trimmed.substring(1);
        }
        return trimmed;
    }
}
