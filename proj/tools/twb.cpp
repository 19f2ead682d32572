// CLI placeholder; the scenario runner lands with the cli layer.
int main() { return 0; }
