# schemas package
