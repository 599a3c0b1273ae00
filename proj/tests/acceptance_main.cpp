#include <cstdio>
#include <iostream>

#include "phaselink/selftest/selftest.hpp"

int main() {
  bool ok = phaselink::report_acceptance(std::cout);
  return ok ? 0 : 1;
}
