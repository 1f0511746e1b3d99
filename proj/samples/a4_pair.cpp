// The three-dimensional representation of A4 over F_7 against the trivial
// character: annihilation holds although theta is not a summand of rho.
#include <iostream>

#include "modp_lab/matrix_groups.hpp"

int main() {
  using namespace modp;
  auto F = make_field(7);
  const Matrix flip = mat::diagonal({1, 6, 6});
  const Matrix cycle = mat::permutation({1, 2, 0});
  const Matrix one = mat::identity(1);
  const auto pair = RepresentationPair::build(F, {flip, cycle}, {one, one});
  std::cout << "|G| = " << pair.order() << "\n";
  std::cout << "annihilation: " << (annihilation_holds(pair).passed ? "holds" : "fails") << "\n";
  const auto kc = kernel_containment(pair);
  std::cout << "kernel containment: " << (kc.holds() ? "holds" : "fails") << "\n";
  std::cout << "rho(G) absolutely irreducible: "
            << (is_absolutely_irreducible(*F, 3, pair.rho_generators()) ? "yes" : "no") << "\n";
}
