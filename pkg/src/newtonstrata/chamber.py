"""The retraction onto the dominant chamber and the Newton point poset.

`retract` is the order-theoretic map: r(d) is the unique dominant point y
with p_M(d') = y and d' <= y, where M is the Levi attached to the face of
y and d' is the finite-ization of d.  The Euclidean companion
`retract_closest` recomputes the same point as a nearest-point projection
under the invariant inner product and exists purely as a cross-check.
"""

from dataclasses import dataclass

from . import dynkin, exactlinalg
from .rationals import NEG_INF, Q, fmt_point, is_finite, qfloor, qceil


class RetractionError(RuntimeError):
    """Internal consistency failure in the retraction (indicates a bug)."""


@dataclass(frozen=True)
class NewtonPoint:
    """A dominant rational point with parabolic face and integral lift."""

    point: tuple
    levi: frozenset  # indices j with <alpha_j, point> = 0
    lift: tuple  # integral cocharacter with p_M(lift) = point

    def to_json(self):
        return {
            "point": fmt_point(self.point),
            "levi": sorted(j + 1 for j in self.levi),
            "lift": [int(m) for m in self.lift],
        }


def finite_ize(datum, d):
    """The d -> d' map: clamp the semisimple part from below by the center.

    Valid for inputs with -inf allowed in the first l slots only; the
    retraction of d equals the retraction of the returned finite point.
    """
    n, l = datum.n, datum.l
    if len(d) != n:
        raise ValueError("point has wrong length")
    torus = tuple(Q(c) if is_finite(c) else c for c in d[l:])
    if any(not is_finite(c) for c in torus):
        raise ValueError("-inf not allowed in torus coordinates")
    g = datum.central_part(torus)
    out = []
    for i in range(l):
        di = d[i]
        gi = g[i]
        # max{d_i - g_i, 0} + g_i collapses to max(d_i, g_i)
        if di is NEG_INF or di <= gi:
            out.append(gi)
        else:
            out.append(Q(di))
    return tuple(out) + torus


def neg_inf_bound(datum, d):
    """An integer B such that replacing each -inf in d by any integer <= B
    leaves retract(d) unchanged.  Implementation-derived, not canonical."""
    g = datum.central_part(tuple(Q(c) for c in d[datum.l:]))
    lo = min((g[i] for i in range(datum.l)), default=Q(0))
    return qfloor(lo) - 1


def _accepts(datum, dprime, subset):
    """Candidate test for one parabolic face; returns y on acceptance."""
    y, coeffs = datum.p_M_with_coeffs(dprime, subset)
    for c in coeffs.values():
        if c > 0:  # y - d' = -c_j e_j must be a nonnegative combination
            return None
    for j in range(datum.l):
        if j not in subset and datum.root_pairing(j, y) <= 0:
            return None
    return y


def retract_exhaustive(datum, d):
    """Subset enumeration with a hard uniqueness assertion."""
    if datum.l > 8:
        raise ValueError("semisimple rank too large for subset enumeration")
    dprime = finite_ize(datum, d)
    hits = []
    for mask in range(1 << datum.l):
        subset = frozenset(j for j in range(datum.l) if mask >> j & 1)
        y = _accepts(datum, dprime, subset)
        if y is not None:
            hits.append((y, subset))
    if len(hits) != 1:
        raise RetractionError(f"{len(hits)} accepting faces for {d!r}")
    return hits[0]


def retract(datum, d):
    """r(d) for d with -inf allowed in the first l slots.

    Returns (y, S) with S the face of y.  Uses a growing active set (each
    round adds the simple roots still violated after projection); the
    result is verified against the order-theoretic acceptance conditions
    and falls back to full subset enumeration if the check fails.
    """
    dprime = finite_ize(datum, d)
    active = set()
    y = dprime
    for _ in range(datum.l + 1):
        bad = [j for j in range(datum.l)
               if j not in active and datum.root_pairing(j, y) < 0]
        if not bad:
            break
        active.update(bad)
        y = datum.p_M(dprime, frozenset(active))
    face = frozenset(
        j for j in range(datum.l) if datum.root_pairing(j, y) == 0
    )
    if datum.leq(dprime, y) and _accepts(datum, dprime, face) == y:
        return y, face
    return retract_exhaustive(datum, d)  # pragma: no cover - safety net


def _invariant_form(datum):
    """Gram matrix of the W-invariant form in omega-coordinates.

    Bourbaki root-length normalization on each semisimple factor,
    orthogonal identity form on the torus coordinates.
    """
    if datum._form is not None:
        return datum._form
    n, l = datum.n, datum.l
    gram_ss = [[Q(0)] * l for _ in range(l)]
    for f in datum.factors:
        norms = dynkin.root_norms(f.letter, f.rank)
        cm = dynkin.cartan_matrix(f.letter, f.rank)
        for a in range(f.rank):
            for b in range(f.rank):
                # (alpha_a^vee, alpha_b^vee) = 2 C[a][b] / norm_b
                gram_ss[f.indices[a]][f.indices[b]] = 2 * Q(cm[a][b]) / norms[b]
    # semisimple components of the basis vectors
    ss_parts = []
    for i in range(n):
        if i < l:
            ss_parts.append(tuple(Q(int(i == k)) for k in range(l)))
        else:
            z = datum.central_part(
                tuple(Q(int(i - l == t)) for t in range(n - l))
            )
            e = [Q(0)] * n
            e[i] = Q(1)
            ss_parts.append(tuple(e[k] - z[k] for k in range(l)))
    form = [[Q(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            val = sum(
                ss_parts[i][a] * gram_ss[a][b] * ss_parts[j][b]
                for a in range(l)
                for b in range(l)
                if ss_parts[i][a] and gram_ss[a][b]
            )
            if i >= l and j >= l:
                val += Q(int(i == j))
            form[i][j] = val
    datum._form = form
    return form


def _kkt_solver(datum, subset):
    cached = datum._kkt_cache.get(subset)
    if cached is not None:
        return cached
    form = _invariant_form(datum)
    if datum._form_dual is None:
        forminv = exactlinalg.inverse(form)
        # dual vectors v_j with B(v_j, .) = <alpha_j, .>
        duals = []
        for j in range(datum.l):
            a = datum.root_coords(j)
            duals.append(exactlinalg.mat_vec(forminv, a))
        datum._form_dual = duals
    duals = datum._form_dual
    idx = sorted(subset)
    mat = [[datum.root_pairing(j, duals[jp]) for jp in idx] for j in idx]
    inv = exactlinalg.inverse(mat) if idx else []
    cached = (idx, inv)
    datum._kkt_cache[subset] = cached
    return cached


def retract_closest(datum, x):
    """Nearest dominant point under the invariant Euclidean form.

    Face enumeration: for each candidate active set solve the equality
    constrained projection and accept when the KKT conditions hold.
    Independent of `retract` (and must agree with it).
    """
    if datum.l > 8:
        raise ValueError("semisimple rank too large for face enumeration")
    if any(not is_finite(c) for c in x):
        raise ValueError("retract_closest needs finite coordinates")
    x = tuple(Q(c) for c in x)
    duals = None
    accepted = []
    for mask in range(1 << datum.l):
        subset = frozenset(j for j in range(datum.l) if mask >> j & 1)
        idx, inv = _kkt_solver(datum, subset)
        duals = datum._form_dual
        b = [datum.root_pairing(j, x) for j in idx]
        lam = [
            -sum(inv[r][k] * b[k] for k in range(len(b))) for r in range(len(b))
        ]
        if any(v < 0 for v in lam):
            continue
        y = list(x)
        for pos, j in enumerate(idx):
            if lam[pos]:
                vj = duals[j]
                for k in range(datum.n):
                    y[k] += lam[pos] * vj[k]
        y = tuple(y)
        if all(
            datum.root_pairing(j, y) >= 0
            for j in range(datum.l)
            if j not in subset
        ):
            accepted.append(y)
    if not accepted or any(y != accepted[0] for y in accepted):
        raise RetractionError("KKT face enumeration did not pin a unique point")
    return accepted[0]


def is_newton_point(datum, y):
    """Certify y as a Newton point, or return None.

    In omega-coordinates the lattice condition reduces to integrality of
    the coordinates away from the face.
    """
    y = tuple(Q(c) for c in y)
    if not datum.is_dominant(y):
        return None
    face = frozenset(
        j for j in range(datum.l) if datum.root_pairing(j, y) == 0
    )
    lift = []
    for i, c in enumerate(y):
        if i in face:
            lift.append(qfloor(c))
        else:
            if c.denominator != 1:
                return None
            lift.append(int(c))
    lift = tuple(lift)
    assert datum.p_M(lift, face) == y
    return NewtonPoint(y, face, lift)


def stratum_of(datum, d):
    """Newton point of an integral valuation vector (-inf allowed in the
    first l slots)."""
    for i, c in enumerate(d):
        if c is NEG_INF:
            if i >= datum.l:
                raise ValueError("-inf not allowed in torus coordinates")
        elif Q(c).denominator != 1:
            raise ValueError("stratum_of needs integral coordinates")
    y, _face = retract(datum, d)
    np = is_newton_point(datum, y)
    if np is None:
        raise RetractionError("retraction of an integral vector must certify")
    return np


def newton_points_below(datum, mu, guard=10**6):
    """All Newton points nu <= mu, each with certificate.

    Box enumeration: the dominant points below mu are coordinatewise
    pinched between the central part of mu and mu itself.
    """
    point = mu.point if isinstance(mu, NewtonPoint) else tuple(Q(c) for c in mu)
    z = datum.central_part(point[datum.l:])
    lo = [qceil(z[i]) for i in range(datum.l)]
    hi = [qfloor(point[i]) for i in range(datum.l)]
    found = {}
    for mask in range(1 << datum.l):
        subset = frozenset(j for j in range(datum.l) if mask >> j & 1)
        free = [i for i in range(datum.l) if i not in subset]
        total = 1
        for i in free:
            total *= max(0, hi[i] - lo[i] + 1)
            if total > guard:
                raise rootdata_guard(guard)
        def rec(pos, m):
            if pos == len(free):
                nu = datum.p_M(tuple(m), subset)
                if nu in found:
                    return
                if any(
                    datum.root_pairing(j, nu) <= 0
                    for j in range(datum.l)
                    if j not in subset
                ):
                    return
                if not datum.leq(nu, point):
                    return
                np = NewtonPoint(nu, subset, tuple(m))
                assert all(datum.root_pairing(j, nu) == 0 for j in subset)
                found[nu] = np
            else:
                i = free[pos]
                for val in range(lo[i], hi[i] + 1):
                    m[i] = val
                    rec(pos + 1, m)
                m[i] = 0
        base = [0] * datum.l + [int(c) for c in point[datum.l:]]
        rec(0, base)
    return sorted(found.values(), key=lambda np: tuple(np.point))


def rootdata_guard(guard):
    from .rootdata import OrbitGuardError

    return OrbitGuardError(f"lattice enumeration exceeds guard {guard}")


def hasse(datum, points):
    """Covering relations of <= on a list of NewtonPoints (index pairs)."""
    pts = [p.point if isinstance(p, NewtonPoint) else tuple(p) for p in points]
    order = [
        (a, b)
        for a in range(len(pts))
        for b in range(len(pts))
        if a != b and datum.leq(pts[a], pts[b])
    ]
    rel = set(order)
    edges = []
    for a, b in order:
        if not any((a, c) in rel and (c, b) in rel for c in range(len(pts))
                   if c != a and c != b):
            edges.append((a, b))
    return sorted(edges)


def hasse_dot(datum, points, edges=None):
    """DOT digraph, nodes labeled by slope tuples, edges small -> large."""
    if edges is None:
        edges = hasse(datum, points)
    labels = []
    for p in points:
        pt = p.point if isinstance(p, NewtonPoint) else tuple(p)
        labels.append(",".join(fmt_point(pt)))
    lines = ["digraph newton {"]
    for i, lab in enumerate(labels):
        lines.append(f'  n{i} [label="{lab}"];')
    for a, b in edges:
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines)
