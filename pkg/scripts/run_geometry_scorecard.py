#!/usr/bin/env python3
"""Numerical scorecard for the geometric claims: braid invariance of the
two-form, vanishing on the mirrored-tuple submanifold, the sphere pairings,
nondegeneracy ranks, the second-variation matrix, and the boundary-frame
winding certificate.

    python3 scripts/run_geometry_scorecard.py --trials 1000
"""
from __future__ import annotations

import argparse
import math

import numpy as np

from repvar.braid import BraidWord
from repvar.chern import (
    chern_pairing,
    junction_gaps,
    modulus_deviation,
    winding_number,
)
from repvar.hessian import (
    build_hprime,
    check_php,
    det_factorization,
    min_abs_eigenvalue,
    pfaffian,
    pfaffian_recurrence,
    signature,
)
from repvar.symplectic import (
    check_braid_invariance,
    check_gamma_lagrangian,
    integrate_fn_pullback,
    monotonicity_ratio,
    nondegeneracy_rank,
    random_k_points,
)

PI_SQ = math.pi * math.pi


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=1000)
    args = parser.parse_args()
    trials = args.trials

    print("== two-form invariance ==")
    for strands in (4, 6, 8):
        worst = max(
            check_braid_invariance(sign * k, strands, trials=trials)
            for k in range(1, strands)
            for sign in (1, -1)
        )
        print(f"  {strands} strands, all generators: max dev {worst:.2e}")

    print("== mirrored-tuple vanishing ==")
    for strands in (4, 6):
        dev = check_gamma_lagrangian(BraidWord(strands, ()), trials=trials)
        print(f"  {strands} slots, identity word: max |form| {dev:.2e}")

    print("== sphere pairings ==")
    fn = integrate_fn_pullback(2)
    report = monotonicity_ratio(pairs=2)
    print(f"  degree-one area integral: {fn:.12f}  (+pi^2 = {fn + PI_SQ:.1e})")
    print(f"  first-class pairing: {chern_pairing(2)}")
    print(f"  ratio: {report.ratio:.12f}  (-pi^2/2 = "
          f"{report.ratio - PI_SQ / 2:.1e})")
    print(f"  degree-zero sphere residue: {report.gamma_form_max:.1e}")

    print("== nondegeneracy ==")
    for pairs in (2, 3):
        pts = random_k_points(pairs, 100, np.random.default_rng(pairs))
        ranks = sorted({nondegeneracy_rank(p) for p in pts})
        print(f"  n={pairs}: ranks {ranks} (expect [{4 * pairs}])")

    print("== second variation ==")
    php = all(check_php(n) for n in range(2, 9))
    sig = sorted({signature(n) for n in range(2, 9)})
    gap = min(min_abs_eigenvalue(n) for n in range(2, 9))
    direct = [pfaffian(build_hprime(n)) for n in range(2, 9)]
    recur = pfaffian_recurrence(8)
    print(f"  parity conjugation exact for n<=8: {php}")
    print(f"  signatures n<=8: {sig}; spectral gap {gap:.4f}")
    print(f"  pfaffians direct {direct}")
    print(f"  pfaffians recurrence {recur}")
    for n in (2, 3, 4):
        fact = det_factorization(n)
        print(f"  n={n}: det {fact.hessian_det} = "
              f"{fact.hprime_pfaffian}^4 -> {fact.matches}")

    print("== boundary-frame winding ==")
    print(f"  modulus dev: first {modulus_deviation():.1e}, "
          f"second {modulus_deviation(second_contour=True):.1e}")
    print(f"  junction gaps: {float(np.max(junction_gaps())):.1e}")
    print(f"  windings: {winding_number()}, "
          f"{winding_number(second_contour=True)} (mirrored "
          f"{winding_number(mirrored=True)})")


if __name__ == "__main__":
    main()
