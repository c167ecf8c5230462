package com.example.files;

import java.nio.file.Path;

public class PathGuard {
    // Rejects paths that leave the parent directory.
    public static boolean checkDirectoryTraversal(Path pathToCheck, Path parentPath) {
        return pathToCheck.startsWith(parentPath.normalize());
    }

    public static String describe(Path parentPath) {
        String label = "parent: ";
        return label + parentPath.toString();
    }
}
