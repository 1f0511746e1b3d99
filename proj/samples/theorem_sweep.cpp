// Runs the exhaustive check for n = 3 at a few primes and prints the counts.
#include <iostream>
#include <thread>

#include "modp_lab/feasibility.hpp"

int main() {
  using namespace modp;
  VerifyOptions opts;
  opts.workers = std::max(1u, std::thread::hardware_concurrency());
  for (i64 p : {7, 11, 13})
    for (i64 r : {0, 1}) {
      const auto rep = exhaustive_verify(p, 3, r, {}, opts);
      std::cout << "p=" << p << " r=" << r << "  types=" << rep.types_checked << " candidates=" << rep.reps_checked
                << " applicable=" << rep.reps_applicable << " counterexamples=" << rep.counterexamples.size()
                << "  (" << rep.elapsed_ms << " ms)\n";
    }
}
