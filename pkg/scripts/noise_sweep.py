"""Race two code books across a bit-flip noise sweep.

For each flip probability q, both books carry the same three-symbol source
(p = 0.5, 0.25, 0.25) through the always-open channel.  The short book
{0, 10, 11} risks fewer exposed cells than the fixed-length book
{00, 01, 10}, so its success curve sum_i p_i (1-q)^{l_i} stays above.

Usage: python scripts/noise_sweep.py [--trials N] [--seed S] [--steps K]
"""

import argparse
import sys

from qprefix import CodeBook, NoiseModel, compare_codes

PROBS = (0.5, 0.25, 0.25)
SHORT = ("0", "10", "11")
FIXED = ("00", "01", "10")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=4000)
    parser.add_argument("--seed", type=int, default=20260819)
    parser.add_argument("--steps", type=int, default=8,
                        help="number of q grid points above zero")
    args = parser.parse_args(argv)

    short = CodeBook.from_texts(SHORT)
    fixed = CodeBook.from_texts(FIXED)
    print("%6s  %22s  %22s" % ("q", "short {0,10,11}", "fixed {00,01,10}"))
    print("%6s  %11s %10s  %11s %10s" % ("", "empirical", "analytic",
                                         "empirical", "analytic"))
    losses = 0
    for k in range(args.steps + 1):
        q = 0.5 * k / args.steps
        noise = NoiseModel("bitflip", q, seed=args.seed)
        report = compare_codes(PROBS, short, fixed, noise, args.trials)
        a, b = report.results
        print("%6.3f  %11.5f %10.5f  %11.5f %10.5f" % (
            q, a.success_rate, a.analytic, b.success_rate, b.analytic))
        if q > 0.0 and a.success_rate <= b.success_rate:
            losses += 1
    verdict = "the short book won every noisy row" if losses == 0 else \
        "the short book lost %d noisy rows" % losses
    print("\n%s over %d trials per point (seed %d)" % (
        verdict, args.trials, args.seed))
    return 0


if __name__ == "__main__":
    sys.exit(main())
