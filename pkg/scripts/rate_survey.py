"""Survey the optimal rates of the bundled ensembles.

Prints Shannon entropy, the best sequential projection, the optimal rate,
and the code-word profile for every fixture ensemble, then shows that the
rate of a product source can undercut twice the single-copy rate.

Usage: python scripts/rate_survey.py [--fixtures DIR]
"""

import argparse
import sys
from pathlib import Path

import numpy as np

from qprefix import (Ensemble, optimal_rate, sequential_projections,
                     shannon_entropy, tensor_ensemble)
from qprefix.serialize import ensemble_from_obj, load_json

FIXTURE_NAMES = ("three_orthogonal", "four_state", "eight_state")


def survey(name: str, ens: Ensemble) -> None:
    rate, proj, asg = optimal_rate(ens)
    n_proj = len(sequential_projections(ens))
    print("%-18s n=%d D=%d  H=%.6f  R=%.6f  lengths=%s" % (
        name, ens.n, ens.dimension, shannon_entropy(ens.probs), rate,
        list(asg.lengths)))
    print("%-18s best p' = %s via groups %s (%d distinct projections)" % (
        "", [round(p, 6) for p in proj.probs], list(proj.groups), n_proj))


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--fixtures", default=None,
                        help="directory with the ensemble fixture files")
    args = parser.parse_args(argv)
    fixtures = Path(args.fixtures) if args.fixtures else \
        Path(__file__).resolve().parent.parent / "fixtures"

    for name in FIXTURE_NAMES:
        ens = ensemble_from_obj(load_json(fixtures / ("%s.json" % name)))
        survey(name, ens)
    print()

    triple = Ensemble.from_states((1 / 3.0,) * 3, list(np.eye(3)))
    single, _, _ = optimal_rate(triple)
    product, _, asg = optimal_rate(tensor_ensemble(triple, triple))
    survey("triple x triple", tensor_ensemble(triple, triple))
    print()
    print("single-copy rate      R      = %.6f" % single)
    print("two-copy rate         R_2    = %.6f" % product)
    print("per-copy product rate R_2/2  = %.6f  (saves %.6f per copy)" % (
        product / 2.0, single - product / 2.0))
    return 0


if __name__ == "__main__":
    sys.exit(main())
