"""Root data with simply connected derived group, in omega-coordinates.

A point x of the Cartan subspace is stored as the tuple
(<omega_1,x>, ..., <omega_n,x>).  In these coordinates the simple coroots
are the first l standard basis vectors, so dominance, the partial order
and the Levi projections are all coordinate computations.

Indices are 0-based everywhere in this module; serialization to the CLI
formats shifts to 1-based.
"""

from dataclasses import dataclass

from . import dynkin, exactlinalg
from .rationals import NEG_INF, Q, frac_part, is_finite


class GroupSpecError(ValueError):
    """Raised when a group descriptor string cannot be parsed or validated."""


class OrbitGuardError(RuntimeError):
    """Raised when an orbit or lattice enumeration exceeds its size guard."""


@dataclass(frozen=True)
class Factor:
    """One irreducible semisimple factor: Bourbaki type plus datum indices."""

    letter: str
    rank: int
    indices: tuple  # datum coordinate indices of its simple roots, Bourbaki order


@dataclass(frozen=True)
class WeylElement:
    """Weyl group element: integer matrix acting on omega-coordinates."""

    matrix: tuple  # n x n, rows
    word: tuple  # simple reflection indices, applied right to left

    def act(self, x):
        m = self.matrix
        return tuple(
            sum(row[j] * x[j] for j in range(len(x)) if row[j]) for row in m
        )

    def __mul__(self, other):
        prod = exactlinalg.mat_mul(self.matrix, other.matrix)
        return WeylElement(
            tuple(tuple(row) for row in prod), self.word + other.word
        )

    def is_identity(self):
        n = len(self.matrix)
        return all(
            self.matrix[i][j] == (1 if i == j else 0)
            for i in range(n)
            for j in range(n)
        )


class RootDatum:
    """Combinatorial skeleton of a split group: rank n, semisimple rank l,
    and the simple roots as integer columns in the omega-basis."""

    def __init__(self, n, l, alpha, factors, label=""):
        self.n = n
        self.l = l
        self.alpha = tuple(tuple(row) for row in alpha)  # n rows, l columns
        self.factors = tuple(factors)
        self.label = label
        self._validate()
        self._pm_cache = {}
        self._refl_cache = {}
        self._central_solver = None
        self._central_cache = {}
        self._root_support = tuple(
            tuple((i, self.alpha[i][j]) for i in range(self.n)
                  if self.alpha[i][j])
            for j in range(self.l)
        )
        self._form = None
        self._form_dual = None
        self._kkt_cache = {}

    def _validate(self):
        if not (1 <= self.n and 0 <= self.l <= self.n):
            raise GroupSpecError("rank bounds violated")
        if len(self.alpha) != self.n or any(len(r) != self.l for r in self.alpha):
            raise GroupSpecError("alpha matrix has wrong shape")
        block = [[self.alpha[i][j] for j in range(self.l)] for i in range(self.l)]
        expect = [[0] * self.l for _ in range(self.l)]
        for f in self.factors:
            cm = dynkin.cartan_matrix(f.letter, f.rank)
            for a in range(f.rank):
                for b in range(f.rank):
                    expect[f.indices[a]][f.indices[b]] = cm[a][b]
        if block != expect:
            raise GroupSpecError("top block does not match the Cartan matrix")
        covered = sorted(i for f in self.factors for i in f.indices)
        if covered != list(range(self.l)):
            raise GroupSpecError("factor indices do not cover the simple roots")

    def __repr__(self):
        return f"RootDatum({self.label or self.factors}, n={self.n}, l={self.l})"

    # -- pairings and the partial order ------------------------------------

    def root_coords(self, j):
        """Coordinates of alpha_j in the omega-basis (a weight vector)."""
        return tuple(self.alpha[i][j] for i in range(self.n))

    def root_pairing(self, j, x):
        """<alpha_j, x> for finite x."""
        total = 0
        for i, a in self._root_support[j]:
            total += a * x[i]
        return total

    def pair(self, lam, x):
        """<lam, x> for a weight lam and a point x, with -inf absorption.

        -inf coordinates of x are only allowed against coefficients >= 0.
        """
        total = Q(0)
        hit_inf = False
        for c, xi in zip(lam, x):
            if xi is NEG_INF:
                if c < 0:
                    raise ValueError("-inf paired with a negative coefficient")
                if c > 0:
                    hit_inf = True
            elif c:
                total += c * xi
        return NEG_INF if hit_inf else total

    def is_dominant(self, x):
        return all(self.root_pairing(j, x) >= 0 for j in range(self.l))

    def leq(self, x, y):
        """x <= y: y - x is a nonnegative combination of simple coroots."""
        for i in range(self.l):
            if y[i] - x[i] < 0:
                return False
        return all(y[i] == x[i] for i in range(self.l, self.n))

    # -- Weyl group --------------------------------------------------------

    def simple_reflection(self, j):
        """s_j : x -> x - <alpha_j, x> e_j as a WeylElement."""
        w = self._refl_cache.get(j)
        if w is None:
            rows = []
            for i in range(self.n):
                row = [int(i == k) for k in range(self.n)]
                if i == j:
                    for k in range(self.n):
                        row[k] -= self.alpha[k][j]
                rows.append(tuple(row))
            w = WeylElement(tuple(rows), (j,))
            self._refl_cache[j] = w
        return w

    def identity_weyl(self):
        return WeylElement(
            tuple(tuple(int(i == j) for j in range(self.n)) for i in range(self.n)),
            (),
        )

    def dominant_rep(self, x):
        """The dominant element of the W-orbit of x, with a witness w: y = w.x."""
        y = list(x)
        word = []
        while True:
            for j in range(self.l):
                p = self.root_pairing(j, y)
                if p < 0:
                    y[j] -= p  # s_j in coordinates
                    word.append(j)
                    break
            else:
                break
        w = self.identity_weyl()
        for j in word:
            w = self.simple_reflection(j) * w
        return tuple(y), w

    def weyl_orbit(self, lam, guard=10**6):
        """Weyl orbit of a weight lam (BFS over s_j : lam -> lam - lam_j alpha_j)."""
        start = tuple(lam)
        seen = {start}
        frontier = [start]
        while frontier:
            new = []
            for mu in frontier:
                for j in range(self.l):
                    if mu[j] == 0:
                        continue
                    col = self.root_coords(j)
                    img = tuple(m - mu[j] * c for m, c in zip(mu, col))
                    if img not in seen:
                        seen.add(img)
                        new.append(img)
                        if len(seen) > guard:
                            raise OrbitGuardError(
                                f"orbit size exceeds guard {guard}"
                            )
            frontier = new
        return seen

    # -- Levi projections --------------------------------------------------

    def _pm_solver(self, subset):
        inv = self._pm_cache.get(subset)
        if inv is None:
            idx = sorted(subset)
            mat = [[self.alpha[jj][j] for jj in idx] for j in idx]
            inv = (idx, exactlinalg.inverse(mat)) if idx else (idx, [])
            self._pm_cache[subset] = inv
        return inv

    def p_M(self, x, subset):
        """Projection onto the Levi center directions: the W_M-orbit average."""
        y, _c = self.p_M_with_coeffs(x, subset)
        return y

    def p_M_with_coeffs(self, x, subset):
        """p_M(x) together with the coroot correction coefficients c_j.

        y = x - sum_{j in S} c_j e_j with <alpha_j, y> = 0 for j in S.
        """
        subset = frozenset(subset)
        if not subset:
            return tuple(x), {}
        idx, inv = self._pm_solver(subset)
        b = [self.root_pairing(j, x) for j in idx]
        c = [sum(inv[r][k] * b[k] for k in range(len(b))) for r in range(len(b))]
        y = list(x)
        for pos, j in enumerate(idx):
            y[j] -= c[pos]
        return tuple(y), dict(zip(idx, c))

    def central_part(self, torus_coords):
        """The point of the center subspace with the given last n-l coordinates."""
        if self.l == 0:
            return tuple(torus_coords)
        key = tuple(torus_coords)
        cached = self._central_cache.get(key)
        if cached is not None:
            return cached
        if self._central_solver is None:
            mat = [[self.alpha[i][j] for i in range(self.l)] for j in range(self.l)]
            self._central_solver = exactlinalg.inverse(mat)
        inv = self._central_solver
        rhs = [
            -sum(
                self.alpha[i][j] * torus_coords[i - self.l]
                for i in range(self.l, self.n)
                if self.alpha[i][j]
            )
            for j in range(self.l)
        ]
        g = [sum(inv[r][k] * rhs[k] for k in range(self.l)) for r in range(self.l)]
        out = tuple(g) + tuple(torus_coords)
        self._central_cache[key] = out
        return out

    def levi(self, subset):
        """Levi sub-datum for a set of simple roots, plus coordinate converters.

        Returns (datum, to_levi, from_levi): the retained simple roots are
        reindexed to come first (in their original relative order), the
        omega-basis is unchanged up to that permutation.
        """
        subset = sorted(set(subset))
        if any(not 0 <= j < self.l for j in subset):
            raise ValueError("invalid Levi subset")
        rest = [i for i in range(self.n) if i not in subset]
        perm = subset + rest  # new position -> old index
        alpha = [
            [self.alpha[perm[i]][j] for j in subset] for i in range(self.n)
        ]
        block = [row[: len(subset)] for row in alpha[: len(subset)]]
        factors = [
            Factor(letter, rank, nodes)
            for letter, rank, nodes in dynkin.classify(block)
        ] if subset else []
        datum = RootDatum(
            self.n, len(subset), alpha, factors, label=f"{self.label}:levi"
        )

        def to_levi(x):
            return tuple(x[perm[i]] for i in range(self.n))

        inv_perm = [0] * self.n
        for new, old in enumerate(perm):
            inv_perm[old] = new

        def from_levi(x):
            return tuple(x[inv_perm[i]] for i in range(self.n))

        return datum, to_levi, from_levi

    # -- lattice quotients -------------------------------------------------

    def _central_kernel(self):
        """Z-basis of X_*(A_G) = {x in Z^n : <alpha_j, x> = 0 for all j}."""
        rows = [[self.alpha[i][j] for i in range(self.n)] for j in range(self.l)]
        if not rows:
            return [
                tuple(int(i == k) for i in range(self.n)) for k in range(self.n)
            ]
        return exactlinalg.integer_kernel(rows)

    def component_group(self):
        """Invariant factors (each > 1) of Lambda_G / X_*(A_G)."""
        m = self.n - self.l
        if m == 0:
            return ()
        gens = [v[self.l:] for v in self._central_kernel()]
        d, _u, _v = exactlinalg.smith_normal_form(gens)
        facs = [d[i][i] for i in range(min(len(gens), m))]
        assert all(f != 0 for f in facs) and len(facs) == m, "quotient not finite"
        return tuple(f for f in facs if f != 1)

    def component_classes(self):
        """One lift in Z^n for every class of the component group."""
        m = self.n - self.l
        if m == 0:
            return [tuple([0] * self.n)]
        gens = [v[self.l:] for v in self._central_kernel()]
        d, _u, v = exactlinalg.smith_normal_form(gens)
        vinv = exactlinalg.unimodular_inverse(v)
        diag = [d[i][i] for i in range(m)]
        reps = []

        def rec(pos, acc):
            if pos == m:
                reps.append(tuple(acc))
                return
            for k in range(diag[pos]):
                rec(pos + 1, acc + [k])

        rec(0, [])
        out = []
        for t in reps:
            coords = tuple(
                sum(t[k] * vinv[k][i] for k in range(m)) for i in range(m)
            )
            out.append(tuple([0] * self.l) + coords)
        return out

    # -- extension changes -------------------------------------------------

    def change_extension(self, rows):
        """Re-choose the extensions omega_i <- omega_i + lambda_i, lambda_i in X*(D).

        `rows` is an l x (n-l) integer matrix; row i gives the X*(D)
        coordinates added to omega_i.  Returns (datum, convert) where
        convert maps old omega-coordinates of a point to new ones.
        """
        rows = [list(r) for r in rows]
        if len(rows) != self.l or any(len(r) != self.n - self.l for r in rows):
            raise ValueError("extension matrix has wrong shape")
        alpha = [list(r) for r in self.alpha]
        for t in range(self.l, self.n):
            for j in range(self.l):
                alpha[t][j] -= sum(
                    self.alpha[i][j] * rows[i][t - self.l] for i in range(self.l)
                )
        datum = RootDatum(
            self.n, self.l, alpha, self.factors, label=f"{self.label}:ext"
        )

        def convert(x):
            if any(not is_finite(c) for c in x):
                raise ValueError("cannot convert a point with -inf coordinates")
            out = list(x)
            for i in range(self.l):
                out[i] = x[i] + sum(
                    rows[i][t] * x[self.l + t] for t in range(self.n - self.l)
                )
            return tuple(out)

        return datum, convert


def fractional_weight_sum(datum, x):
    """Sum of fractional parts of the first l coordinates (the d_G kernel)."""
    return sum((frac_part(x[i]) for i in range(datum.l)), Q(0))


# ---------------------------------------------------------------------------
# Group descriptor grammar


def _parse_intvec(s, l):
    s = s.strip()
    if s.startswith("-e") or s.startswith("e"):
        sign = -1 if s[0] == "-" else 1
        k = int(s[2:] if sign < 0 else s[1:])
        if not 1 <= k <= l:
            raise GroupSpecError(f"basis index out of range in {s!r}")
        return [sign * int(i == k - 1) for i in range(l)]
    try:
        vec = [int(tok) for tok in s.split(",")]
    except ValueError as exc:
        raise GroupSpecError(f"bad integer vector {s!r}") from exc
    if len(vec) != l:
        raise GroupSpecError(f"integer vector {s!r} has wrong length")
    return vec


def _parse_factor(tok):
    tok = tok.strip()
    if tok.startswith("Gext(") and tok.endswith(")"):
        inner = tok[5:-1]
        if ";" in inner:
            typ, m = inner.split(";", 1)
            if not m.startswith("m="):
                raise GroupSpecError(f"expected ';m=' in {tok!r}")
            m = m[2:]
        else:
            typ, m = inner, None
        letter, rank = _parse_sctype(typ)
        mvec = None if m is None else _parse_intvec(m, rank)
        return ("gext", letter, rank, mvec)
    if tok.startswith("GL"):
        try:
            n = int(tok[2:])
        except ValueError as exc:
            raise GroupSpecError(f"bad factor {tok!r}") from exc
        if n < 1:
            raise GroupSpecError("GLn needs n >= 1")
        return ("gl", n)
    if tok.startswith("T"):
        try:
            k = int(tok[1:])
        except ValueError as exc:
            raise GroupSpecError(f"bad factor {tok!r}") from exc
        if k < 1:
            raise GroupSpecError("torus rank must be >= 1")
        return ("torus", k)
    letter, rank = _parse_sctype(tok)
    return ("simple", letter, rank)


def _parse_sctype(tok):
    tok = tok.strip()
    if len(tok) < 2 or tok[0] not in dynkin.RANK_BOUNDS:
        raise GroupSpecError(f"bad simple type {tok!r}")
    try:
        rank = int(tok[1:])
    except ValueError as exc:
        raise GroupSpecError(f"bad simple type {tok!r}") from exc
    lo, hi = dynkin.RANK_BOUNDS[tok[0]]
    if not lo <= rank <= hi:
        raise GroupSpecError(f"rank out of bounds for {tok!r}")
    return tok[0], rank


def _gext_preset_row(letter, rank):
    """Pick m = -e_{j0} maximizing the component group order, at build time."""
    best = None
    for j0 in range(1, rank + 1):
        m = [-int(i == j0 - 1) for i in range(rank)]
        datum = _assemble([("gext", letter, rank, m)], label="probe")
        order = 1
        for f in datum.component_group():
            order *= f
        if best is None or order > best[0]:
            best = (order, m)
    return best[1]


def _assemble(parts, label):
    semis = []  # (letter, rank, mvec or None)
    torus_total = 0
    gext_rows = []  # (torus slot, factor slot) pairs resolved later
    plan = []
    for part in parts:
        if part[0] == "simple":
            plan.append(("simple", part[1], part[2]))
        elif part[0] == "torus":
            plan.append(("torus", part[1]))
        elif part[0] == "gl":
            n = part[1]
            if n == 1:
                plan.append(("torus", 1))
            else:
                m = [-int(i == n - 2) for i in range(n - 1)]
                plan.append(("gext", "A", n - 1, m))
        elif part[0] == "gext":
            letter, rank, m = part[1], part[2], part[3]
            if m is None:
                m = _gext_preset_row(letter, rank)
            plan.append(("gext", letter, rank, m))
        else:  # pragma: no cover
            raise AssertionError(part)
    l = sum(p[2] for p in plan if p[0] in ("simple", "gext"))
    n = l + sum(p[1] for p in plan if p[0] == "torus") + sum(
        1 for p in plan if p[0] == "gext"
    )
    alpha = [[0] * l for _ in range(n)]
    factors = []
    col = 0
    torus_row = l
    for p in plan:
        if p[0] == "torus":
            torus_row += p[1]
            continue
        letter, rank = p[1], p[2]
        cm = dynkin.cartan_matrix(letter, rank)
        idx = tuple(range(col, col + rank))
        for a in range(rank):
            for b in range(rank):
                alpha[idx[a]][idx[b]] = cm[a][b]
        factors.append(Factor(letter, rank, idx))
        if p[0] == "gext":
            for b in range(rank):
                alpha[torus_row][idx[b]] = p[3][b]
            torus_row += 1
        col += rank
    return RootDatum(n, l, alpha, factors, label=label)


def build_group(spec):
    """Build a validated RootDatum from a descriptor string.

    Grammar: spec := factor ("*" factor)*
             factor := SCTYPE | "GL" INT | "T" INT
                     | "Gext(" SCTYPE [";m=" INTVEC] ")"
    """
    spec = spec.strip()
    if not spec:
        raise GroupSpecError("empty group spec")
    # split on '*' outside parentheses
    toks, depth, cur = [], 0, []
    for ch in spec:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "*" and depth == 0:
            toks.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    toks.append("".join(cur))
    parts = [_parse_factor(t) for t in toks]
    return _assemble(parts, label=spec)
