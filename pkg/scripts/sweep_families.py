"""Tabulate the (n,m,k) and generalized-star criteria against exact determinants."""

import argparse
import itertools

from blockspec.families import NMK, GeneralizedStar, generate, nmk_is_singular, star_is_nonsingular
from blockspec.linalg import det_graph


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=6)
    ap.add_argument("--m-max", type=int, default=6)
    ap.add_argument("--k-max", type=int, default=3)
    ap.add_argument("--star-n-max", type=int, default=3)
    args = ap.parse_args()

    print("n m k  predicted_singular  det")
    disagreements = 0
    for n, m, k in itertools.product(range(2, args.n_max + 1), range(3, args.m_max + 1), range(1, args.k_max + 1)):
        d = det_graph(generate(NMK(n, m, k)))
        pred = nmk_is_singular(n, m, k)
        disagreements += pred != (d == 0)
        print(f"{n} {m} {k}  {pred!s:18}  {d}")

    options = [(3,), (4,), (5,), (3, 3), (3, 4), (4, 4)]
    stars = 0
    for n in range(2, args.star_n_max + 1):
        for att in itertools.product(options, repeat=n):
            spec = GeneralizedStar(n, att)
            stars += 1
            disagreements += star_is_nonsingular(spec) != (det_graph(generate(spec)) != 0)
    print(f"{stars} generalized stars checked, {disagreements} disagreements overall")
    return 1 if disagreements else 0


if __name__ == "__main__":
    raise SystemExit(main())
