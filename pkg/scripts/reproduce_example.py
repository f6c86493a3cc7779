"""Recompute the five-dimensional Kenmotsu example end to end and print the
tables next to the soliton parameter sweep.

    python3 scripts/reproduce_example.py [--k-samples 7]
"""

from __future__ import annotations

import argparse
import time
from fractions import Fraction

from kenmotsu.algebra import symbol
from kenmotsu.dsl import load_builtin
from kenmotsu.geometry import analyze
from kenmotsu.soliton import SolitonParams, divergence, sign_regions, soliton_residual

CASES = {"*-k-Ricci": (1, 0), "*-k-Yamabe": (0, 2), "*-k-Einstein": (1, 1)}


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--k-samples", type=int, default=7,
                        help="number of k values sampled on each side of the sign change")
    args = parser.parse_args()

    t0 = time.perf_counter()
    doc = load_builtin("kenmotsu5")
    m = doc.to_manifold()
    geo = analyze(m)
    elapsed = time.perf_counter() - t0
    names = m.frame_names

    failed = [c.name for c in geo.all_checks() if not c.passed]
    print(f"{len(geo.all_checks())} checks, {len(failed)} failed {failed or ''}  ({elapsed:.2f}s)")

    print("\nnonzero connection entries")
    for i in range(m.dim):
        for j in range(m.dim):
            vec = geo.connection(i, j)
            if not vec.is_zero():
                print(f"  nabla_{names[i]} {names[j]} = {vec.render(names)}")

    print("\nnonzero curvature entries R(e_i, e_j) e_k with i < j")
    for (i, j, k), vec in geo.riemann.nonzero():
        if i < j:
            print(f"  R({names[i]},{names[j]}){names[k]} = {vec.render(names)}")

    print(f"\nr = {geo.scalar}   r* = {geo.star_scalar}")
    print(f"S(e1,e1) = {geo.ricci[0, 0]}   S*(e1,e1) = {geo.star_ricci[0, 0]}   "
          f"S*(e5,e5) = {geo.star_ricci[4, 4]}")

    V = doc.vector_field(m, "V")
    print(f"\nV = {V.render(names)}   div V = {divergence(m, geo.connection, V)}")
    general = soliton_residual(geo, V, SolitonParams("alpha", "beta", "k"), "trace")
    print(f"trace-fitted Lambda = {general.fitted_lambda}")

    k = symbol("k")
    for label, (a, b) in CASES.items():
        lam = soliton_residual(geo, V, SolitonParams(a, b, k), "trace").fitted_lambda
        regions = sign_regions(lam, "k")
        root = regions["root"]
        print(f"\n{label}: Lambda = {lam}; steady at k = {root}")
        step = Fraction(1, 2)
        samples = [root + step * s for s in range(-(args.k_samples // 2), args.k_samples // 2 + 1)]
        for kv in samples:
            if kv == 0:
                continue
            rep = soliton_residual(geo, V, SolitonParams(a, b, kv), "trace")
            print(f"  k = {str(kv):>6}  Lambda = {str(rep.fitted_lambda):>7}  {rep.classification}")


if __name__ == "__main__":
    main()
