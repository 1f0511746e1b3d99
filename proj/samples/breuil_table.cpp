// Prints the niveau-2 profiles for p = 5, r = 1, x in {1, 2} together with
// the generic-fiber exponent computed both ways.
#include <iostream>

#include "modp_lab/breuil_rank_one.hpp"

int main() {
  using namespace modp;
  const TameParams tp(5, 2);
  for (const auto& prof : enumerate_profiles(tp, 1, {1, 2})) {
    const auto data = from_profile(prof);
    std::cout << "x=(" << prof.x_vec[0] << "," << prof.x_vec[1] << ") y=(" << prof.y_vec[0] << "," << prof.y_vec[1]
              << ")  k=(" << data.k_vec[0] << "," << data.k_vec[1] << ") r=(" << data.r_vec[0] << ","
              << data.r_vec[1] << ")  kappa0=" << profile_kappa(prof).kappa() << " / "
              << generic_fiber_exponent(data).kappa() << "\n";
  }
}
