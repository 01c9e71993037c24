#include <cstdio>

int main() {
  std::puts("e2homlab: command-line interface under construction");
  return 0;
}
