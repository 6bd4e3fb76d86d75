// Evaluates a formula in a two-element model, proves a sequent and checks
// the proof.

#include <iostream>

#include "nomfol/nomfol.hpp"

using namespace nomfol;

int main() {
  Signature sig;
  sig.declare_predicate("P", 1);
  sig.declare_function("c", 0);

  OrdinaryModel N = parse_model("domain 2\nfun c : 1\npred P : 0 1\n", sig);
  Formula phi = parse_formula("P(a) /\\ forall b. (P(b) -> P(a))", sig);
  TableFun t = interpret(phi, lift_interpretation(N));
  std::cout << pretty(phi) << "  =>  " << t.show() << '\n';

  Sequent s = parse_sequent_text("forall a. P(a) |- P(c())", sig);
  ProveResult r = prove(s, sig);
  if (!r) return 1;
  std::cout << write_proof(*r.proof) << check_proof(*r.proof).show() << '\n';
}
