# hyperrewrite - rewriting engine for free hypergraph categories
