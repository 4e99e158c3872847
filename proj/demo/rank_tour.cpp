// Walks the library through a few derivations of Q[x,y,z]: build D from a
// Jacobian or from coefficients, find a minimal local slice, and classify the
// plinth generator to get the rank.

#include <iomanip>
#include <iostream>

#include "lnd/parse.hpp"
#include "lnd/rank.hpp"

using namespace lnd;

namespace {

void show(const char* label, const Derivation& d, const KernelPair& kp) {
  auto r = compute_rank(d, kp);
  std::cout << label << "\n  D = " << d.to_string() << "\n  kernel = Q[" << kp.f << ", " << kp.g << "]\n";
  std::cout << "  minimal slice " << r.plinth.slice.s << " with D(s) = " << r.plinth.slice.value << "\n";
  std::cout << "  plinth generator " << r.plinth.generator << ", in kernel variables " << r.generator_abstract << "\n";
  if (const auto* w = std::get_if<RankTwoWitness>(&r.witness))
    std::cout << "  coordinate of the kernel: " << w->inner << "\n";
  if (const auto* w = std::get_if<RankThreeWitness>(&r.witness))
    std::cout << "  " << w->log.size() << " decomposition candidates rejected\n";
  std::cout << "  rank " << r.rank << "\n\n";
}

}  // namespace

int main() {
  // Rank 1: a slice exists after rescaling.
  show("translation", Derivation(parse_xyz("0"), parse_xyz("0"), parse_xyz("x^2 + 1")), {parse_xyz("x"), parse_xyz("y")});

  // Rank 2 via the Jacobian construction.
  Poly f = parse_xyz("x"), g = parse_xyz("x*z - y^2");
  auto chk = check_locally_nilpotent_jacobian(f, g);
  std::cout << "Jac(x, xz - y^2, .) locally nilpotent: " << std::boolalpha << chk.nilpotent << " (bound "
            << chk.bound << ")\n";
  show("jacobian", from_jacobian(f, g), {f, g});

  // Plinth generated by the square of a coordinate, so still rank 2.
  show("x^2*Dy + 2*y*Dz", Derivation(parse_xyz("0"), parse_xyz("x^2"), parse_xyz("2*y")),
       {parse_xyz("x"), parse_xyz("x^2*z - y^2")});

  // Freudenburg's (2,5) example has rank 3.
  Poly F = parse_xyz("x*z - y^2");
  Poly G = parse_xyz("z*(x*z - y^2)^2 + 2*x^2*y*(x*z - y^2) + x^5");
  show("freudenburg (2,5)", from_jacobian(F, G), {F, G});
}
