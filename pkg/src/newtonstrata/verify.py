"""Randomized verification suites shared by the CLI and the test suite."""

import random

from . import affine, toruseval
from .rationals import Q


def random_lift(datum, class_lift, rng, spread=3):
    """Another integral representative of the same class: add random coroots."""
    lift = list(class_lift)
    for j in range(datum.l):
        # simple coroots are the standard basis vectors in omega-coordinates
        lift[j] += rng.randint(-spread, spread)
    return tuple(lift)


def suite_rnu(datum, seed=0, count=1000, denominator=None):
    """Theorem-style retraction check on seeded monomial torus points."""
    rng = random.Random(seed)
    if denominator is None:
        denominators = (1, 2, 3)
    else:
        denominators = (denominator,)
    failures = []
    for k in range(count):
        den = denominators[k % len(denominators)]
        a = toruseval.random_torus_point(datum, rng, denominator=den)
        rep = toruseval.check_thm_rnu(datum, a)
        if not rep["pass"]:
            failures.append({"case": k, "report": _jsonable(rep)})
    return {
        "suite": "rnu",
        "group": datum.label,
        "count": count,
        "failures": failures,
        "pass": not failures,
    }


def suite_defect(datum, seed=0, lifts=3):
    """Defect identity for every component-group class, several lifts each."""
    rng = random.Random(seed)
    failures = []
    cases = 0
    for class_lift in datum.component_classes():
        reps = [class_lift] + [
            random_lift(datum, class_lift, rng) for _ in range(lifts - 1)
        ]
        base = None
        for lift in reps:
            cases += 1
            rep = affine.verify_defect_identity(datum, lift)
            if base is None:
                base = rep["defect"]
            if not rep["pass"] or rep["defect"] != base:
                failures.append({"lift": list(lift), "report": _jsonable(rep)})
    return {
        "suite": "defect",
        "group": datum.label,
        "count": cases,
        "failures": failures,
        "pass": not failures,
    }


def suite_chars(datum, seed=0):
    """Cyclotomic character-multiset check for every class."""
    failures = []
    cases = 0
    for class_lift in datum.component_classes():
        cases += 1
        rep = affine.reflection_char_multiset_check(datum, class_lift)
        if not rep["pass"]:
            failures.append({"lift": list(class_lift), "report": _jsonable(rep)})
    return {
        "suite": "chars",
        "group": datum.label,
        "count": cases,
        "failures": failures,
        "pass": not failures,
    }


SUITES = {
    "rnu": lambda datum, seed, count: suite_rnu(datum, seed=seed, count=count),
    "defect": lambda datum, seed, count: suite_defect(datum, seed=seed),
    "chars": lambda datum, seed, count: suite_chars(datum, seed=seed),
}


def run_suites(datum, names, seed=0, count=1000):
    return [SUITES[name](datum, seed, count) for name in names]


def _jsonable(obj):
    from .rationals import NEG_INF, fmt_scalar, is_finite

    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if obj is NEG_INF:
        return "-inf"
    if isinstance(obj, (bool, int, str)):
        return obj
    if is_finite(obj):
        return fmt_scalar(Q(obj))
    return str(obj)
