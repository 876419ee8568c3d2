# Tests package for hyperrewrite
