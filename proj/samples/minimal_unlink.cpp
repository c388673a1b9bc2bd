// Builds the thinnest member of the unlink family, prints its lengths and
// certificate, and writes both cores as JSON next to the binary.

#include <iostream>

#include "gordian/gordian.hpp"

int main() {
  const gordian::UnlinkMember m = gordian::build_member(0.5);
  std::cout << "len(gamma) = " << m.len_gamma << "\n"
            << "len(beta)  = " << m.len_beta << "\n"
            << "Rop        = " << m.rop << "\n";
  for (const auto& p : m.certificate.premises) {
    std::cout << "  " << (p.passed ? "ok   " : "FAIL ") << p.name << "  " << p.detail << "\n";
  }
  gordian::save_curve(m.gamma, "gamma_half.json");
  gordian::save_curve(m.beta, "beta_half.json");

  const auto report = gordian::thickness_radius(m.gamma);
  std::cout << "tau(gamma) = " << report.tau << " at s = " << report.witness.s1 << ", " << report.witness.s2 << "\n";
  return m.certificate.pass ? 0 : 1;
}
