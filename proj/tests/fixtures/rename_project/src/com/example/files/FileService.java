package com.example.files;

import java.io.File;
import java.nio.file.Path;

public class FileService {
    private Path rootPath;
    private int openCount;

    public FileService(Path rootPath) {
        this.rootPath = rootPath;
        this.openCount = 0;
    }

    public boolean openFile(Path pathToCheck) {
        Path parentPath = rootPath;
        if (!PathGuard.checkDirectoryTraversal(pathToCheck, parentPath)) {
            return false;
        }
        File target = pathToCheck.toFile();
        openCount = openCount + 1;
        return target.exists();
    }

    public int getOpenCount() {
        return openCount;
    }
}
