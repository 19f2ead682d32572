// Acceptance suite: one pass/fail line per criterion. Populated alongside the
// engine; see README for how to run.
#include <cstdio>

int main() {
  std::puts("acceptance: placeholder");
  return 0;
}
