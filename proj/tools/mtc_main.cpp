#include <cstdio>

int main() {
  std::puts("mtc: cli under construction");
  return 2;
}
