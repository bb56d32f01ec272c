// Walks through theta' on 7642135: the consistent pair, the two-stack
// construction, and the statistics it transports.
#include <iostream>

#include "permstat/permstat.hpp"

int main() {
  using namespace permstat;
  const auto pi = parse_permutation("7642135");

  const auto pair = theta1(pi);
  std::cout << "theta1(" << pi.to_string() << ") = " << pair.to_string() << '\n';

  StackTrace trace;
  const auto tau = theta2(pair, &trace);
  std::cout << "theta2" << pair.to_string() << " = " << tau.to_string() << '\n';
  std::cout << "stack A order checks: " << trace.monotonicity_checks
            << ", violations: " << trace.monotonicity_violations << '\n';

  std::cout << "Asc(pi)  = " << format_stat_value(eval_stat("Asc", pi)) << '\n';
  std::cout << "Atop(tau)= " << format_stat_value(eval_stat("Atop", tau)) << '\n';
  std::cout << "maj(pi) = " << eval_int("maj", pi) << ", makl(theta(pi)) = " << eval_int("makl", theta(pi)) << '\n';

  const auto sigma = parse_permutation("3214");
  std::cout << "psi(" << sigma.to_string() << ") = " << psi(sigma).to_string() << ", fozepp = " << eval_int("fozepp", sigma)
            << ", inv = " << eval_int("inv", psi(sigma)) << '\n';
  return 0;
}
