"""JSON formats for the fixture corpus and the command-line tool.

Everything is plain JSON so fixtures stay human-diffable: complex numbers
are [re, im] pairs, bit strings are 0/1 text (empty text for the empty
word), matrices are nested row-major lists.  Probabilities may be given as
JSON numbers or as decimal text; they are converted to float exactly once
on load.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .channel import CodeBook
from .codec import Ensemble, LosslessCode, SequentialProjection
from .errors import ValidationError
from .qstring import BitString, QubitString


def load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise ValidationError("input file not found: %s" % path)
    except json.JSONDecodeError as exc:
        raise ValidationError("malformed JSON in %s: %s" % (path, exc))


def _require(obj, key, where):
    if not isinstance(obj, dict) or key not in obj:
        raise ValidationError("missing %r in %s" % (key, where))
    return obj[key]


def _as_prob(x):
    if isinstance(x, str):
        try:
            return float(x)
        except ValueError:
            raise ValidationError("bad probability text %r" % x)
    return float(x)


def qstring_to_obj(psi: QubitString) -> dict:
    return {"terms": [{"bits": s.text, "re": a.real, "im": a.imag}
                      for s, a in psi.items_sorted()]}


def qstring_from_obj(obj) -> QubitString:
    terms = _require(obj, "terms", "qubit string")
    acc = {}
    for t in terms:
        bits = BitString.from_text(_require(t, "bits", "qubit string term"))
        amp = complex(float(t.get("re", 0.0)), float(t.get("im", 0.0)))
        acc[bits] = acc.get(bits, 0j) + amp
    return QubitString(acc)


def vector_to_obj(vec) -> dict:
    v = np.asarray(vec, dtype=complex)
    return {"amps": [[z.real, z.imag] for z in v]}


def vector_from_obj(obj):
    amps = _require(obj, "amps", "vector")
    try:
        return np.array([complex(re, im) for re, im in amps])
    except (TypeError, ValueError):
        raise ValidationError("vector amps must be [re, im] pairs")


def ensemble_to_obj(ensemble: Ensemble) -> dict:
    return {"dimension": ensemble.dimension,
            "states": [{"p": p, "amps": vector_to_obj(v)["amps"]}
                       for p, v in zip(ensemble.probs, ensemble.vectors)]}


def ensemble_from_obj(obj) -> Ensemble:
    dim = int(_require(obj, "dimension", "ensemble"))
    states = _require(obj, "states", "ensemble")
    if not isinstance(states, list) or not states:
        raise ValidationError("ensemble needs a nonempty state list")
    probs = [_as_prob(_require(s, "p", "ensemble state")) for s in states]
    vecs = [vector_from_obj(s) for s in states]
    return Ensemble.from_states(probs, vecs, dim)


def basis_from_obj(obj):
    vectors = _require(obj, "vectors", "basis")
    return [qstring_from_obj(v) for v in vectors]


def projection_to_obj(proj: SequentialProjection) -> dict:
    return {"probs": list(proj.probs),
            "groups": [list(g) for g in proj.groups],
            "reps": list(proj.reps)}


def _matrix_to_obj(mat) -> list:
    return [[[z.real, z.imag] for z in row] for row in np.asarray(mat, dtype=complex)]


def _matrix_from_obj(rows):
    try:
        return np.array([[complex(re, im) for re, im in row] for row in rows])
    except (TypeError, ValueError):
        raise ValidationError("matrix entries must be [re, im] pairs")


def code_to_obj(code: LosslessCode) -> dict:
    return {"codewords": [w.text for w in code.codewords],
            "lengths": list(code.lengths),
            "isometry": _matrix_to_obj(code.isometry),
            "projection": projection_to_obj(code.projection),
            "rate": code.rate,
            "dimension": code.dimension}


def code_from_obj(obj) -> LosslessCode:
    words = tuple(BitString.from_text(t)
                  for t in _require(obj, "codewords", "code"))
    isometry = _matrix_from_obj(_require(obj, "isometry", "code"))
    proj_obj = _require(obj, "projection", "code")
    proj = SequentialProjection(
        tuple(_as_prob(x) for x in _require(proj_obj, "probs", "code projection")),
        tuple(tuple(g) for g in _require(proj_obj, "groups", "code projection")),
        tuple(_require(proj_obj, "reps", "code projection")))
    rate = float(_require(obj, "rate", "code"))
    if isometry.ndim != 2 or isometry.shape[0] != len(words):
        raise ValidationError("isometry shape does not match the code words")
    return LosslessCode(words, isometry, isometry.conj(), proj, rate)


def book_from_obj(obj) -> CodeBook:
    # accept a plain book file or a full code file
    if isinstance(obj, dict) and "words" in obj:
        texts = obj["words"]
    elif isinstance(obj, dict) and "codewords" in obj:
        texts = obj["codewords"]
    else:
        raise ValidationError("expected a code book ('words') or code ('codewords') file")
    if not isinstance(texts, list):
        raise ValidationError("code words must form a list")
    return CodeBook.from_texts(texts)


def dist_from_obj(obj):
    probs = [_as_prob(x) for x in _require(obj, "probs", "distribution")]
    if not probs or any(x < 0.0 for x in probs) or abs(math.fsum(probs) - 1.0) > 1e-9:
        raise ValidationError("not a probability distribution")
    return probs


def round_floats(value, ndigits: int = 12):
    """Recursively round floats so reports are byte-stable at 12 decimals."""
    if isinstance(value, float):
        return round(value, ndigits)
    if isinstance(value, dict):
        return {k: round_floats(v, ndigits) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [round_floats(v, ndigits) for v in value]
    return value
