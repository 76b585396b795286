// Walks through the main operations on one weight of GL(3|2) in characteristic 3.
#include "supercrystal/supercrystal.hpp"

#include <iostream>

using namespace supercrystal;

int main() {
  auto ctx = ParityContext::from_parities({1, 1, 0, 0, 0}, 3);
  Weight lambda{1, -1, 1, 7, 5};

  for (Int r : relevant_residues(ctx, lambda)) {
    std::cout << "r=" << r << ": " << r_signature(ctx, lambda, r).str() << " / "
              << reduced_signature(ctx, lambda, r).str() << '\n';
  }

  auto up = f_star(ctx, lambda, 0);
  std::cout << "f*_0: " << (up ? format_weight(*up) : "none") << '\n';
  std::cout << "wt:   " << format_affine(wt_of(ctx, lambda)) << '\n';
  std::cout << "5 is 0-" << to_string(classify_index(ctx, lambda, 5, 0).kind) << '\n';

  // the affine weight changes by a simple root along every edge
  if (up && !(wt_of(ctx, *up) + alpha_of(ctx, 0) == wt_of(ctx, lambda))) return 1;

  PbwEngine<Rational> eng(ctx, GeneratorOrder::standard(ctx.rank()));
  std::cout << "S_{1,3}({2}):\n" << eng.dump(lowering_S(eng, 1, 3, {2}));
  std::cout << "Z_2 acts on v_lambda by " << z_scalar(ctx, lambda, 2) << '\n';
  return 0;
}
