"""Extended affine Weyl group: alcove reduction, the base-alcove section,
defect, and the character decomposition of the reflection representation."""

from dataclasses import dataclass

from . import dynkin, exactlinalg
from .rationals import Q, frac_part
from .strata import d_G


@dataclass(frozen=True)
class AffineWeylElement:
    """Pair (translation, linear part) acting as v -> linear(v) + translation."""

    translation: tuple  # integral cocharacter
    linear: "WeylLike"

    def act(self, v):
        img = self.linear.act(v)
        return tuple(a + t for a, t in zip(img, self.translation))

    def __mul__(self, other):
        t = tuple(
            a + b
            for a, b in zip(self.translation, self.linear.act(other.translation))
        )
        return AffineWeylElement(t, self.linear * other.linear)


@dataclass(frozen=True)
class LambdaGElement:
    """Class in the quotient of the cocharacter lattice by the coroots."""

    class_coords: tuple  # canonical coordinates: the last n - l entries
    lift: tuple  # a chosen integral representative

    @classmethod
    def from_lift(cls, datum, lift):
        lift = tuple(int(m) for m in lift)
        return cls(lift[datum.l:], lift)


def translation(datum, lift):
    return AffineWeylElement(tuple(int(m) for m in lift), datum.identity_weyl())


def _factor_tables(datum):
    """Per-factor affine data: highest root, its coroot, simple affine roots,
    and the interior sample point of the base alcove."""
    cache = getattr(datum, "_affine_tables", None)
    if cache is not None:
        return cache
    n = datum.n
    tables = []
    p0 = [Q(0)] * n
    for fidx, f in enumerate(datum.factors):
        cm = dynkin.cartan_matrix(f.letter, f.rank)
        norms = dynkin.root_norms(f.letter, f.rank)
        marks = dynkin.highest_root(cm)
        h = sum(marks) + 1  # Coxeter number
        theta = [0] * n
        for a in range(f.rank):
            col = datum.root_coords(f.indices[a])
            for i in range(n):
                theta[i] += marks[a] * col[i]
        theta_norm = sum(
            Q(marks[a]) * marks[b] * cm[a][b] * norms[a] / 2
            for a in range(f.rank)
            for b in range(f.rank)
        )
        theta_check = [0] * n
        for a in range(f.rank):
            # theta^vee = (2/|theta|^2) theta; alpha_a = (norm_a/2) alpha_a^vee
            co = Q(marks[a]) * norms[a] / theta_norm
            assert co.denominator == 1
            theta_check[f.indices[a]] = int(co)
        # rho^vee / (h + 1) within this factor's coroot span
        mat = [
            [datum.alpha[f.indices[b]][f.indices[a]] for b in range(f.rank)]
            for a in range(f.rank)
        ]
        sol = exactlinalg.solve(mat, [Q(1, h + 1)] * f.rank)
        for b in range(f.rank):
            p0[f.indices[b]] += sol[b]
        # simple affine roots: (functional coords, constant, generator id)
        roots = [
            (datum.root_coords(j), 0, j) for j in f.indices
        ]
        roots.append((tuple(-c for c in theta), 1, -(fidx + 1)))
        tables.append(
            {
                "factor": f,
                "theta": tuple(theta),
                "theta_check": tuple(theta_check),
                "coxeter": h,
                "affine_roots": roots,
            }
        )
    datum._affine_tables = (tables, tuple(p0))
    return datum._affine_tables


def _generator(datum, gen_id):
    """The affine reflection for a generator id (j >= 0 finite, -f affine)."""
    tables, _p0 = _factor_tables(datum)
    if gen_id >= 0:
        return AffineWeylElement(
            tuple([0] * datum.n), datum.simple_reflection(gen_id)
        )
    tab = tables[-gen_id - 1]
    theta, theta_check = tab["theta"], tab["theta_check"]
    n = datum.n
    rows = []
    for i in range(n):
        row = [int(i == k) - theta_check[i] * theta[k] for k in range(n)]
        rows.append(tuple(row))
    from .rootdata import WeylElement

    linear = WeylElement(tuple(rows), ())
    return AffineWeylElement(theta_check, linear)


def simple_affine_roots(datum):
    tables, _p0 = _factor_tables(datum)
    return [r for tab in tables for r in tab["affine_roots"]]


def alcove_reduce(datum, x):
    """Left-multiply by simple affine reflections until the element carries
    the base alcove to itself.  Returns (x0, word) with x0 = prod(word) * x,
    the word listing generator ids in application order."""
    tables, p0 = _factor_tables(datum)
    roots = simple_affine_roots(datum)
    word = []
    point = x.act(p0)
    steps = 0
    while True:
        for lam, k, gid in roots:
            val = sum(lam[i] * point[i] for i in range(datum.n) if lam[i]) + k
            if val < 0:
                refl = _generator(datum, gid)
                x = refl * x
                point = refl.act(point)
                word.append(gid)
                steps += 1
                break
            assert val != 0, "sample point hit an affine wall"
        else:
            break
        assert steps < 100000, "alcove reduction failed to terminate"
    return x, word


def stabilizes_base_alcove(datum, x):
    """True iff x permutes the set of simple affine roots."""
    roots = simple_affine_roots(datum)
    keyset = {(lam, k) for lam, k, _g in roots}
    w = x.linear.matrix
    n = datum.n
    # functional transport: (lam, k) -> (lam o x^{-1}) needs x^{-1}
    inv_lin = exactlinalg.inverse([list(r) for r in w])
    for lam, k, _g in roots:
        new_lam = tuple(
            sum(lam[i] * inv_lin[i][j] for i in range(n)) for j in range(n)
        )
        shift = sum(
            lam[i] * sum(inv_lin[i][j] * x.translation[j] for j in range(n))
            for i in range(n)
        )
        new_k = k - shift
        if any(c.denominator != 1 for c in new_lam) or new_k.denominator != 1:
            return False
        key = (tuple(int(c) for c in new_lam), int(new_k))
        if key not in keyset:
            return False
    return True


def section_s(datum, nu):
    """The base-alcove section of the quotient map, evaluated at nu."""
    if not isinstance(nu, LambdaGElement):
        nu = LambdaGElement.from_lift(datum, nu)
    x0, _word = alcove_reduce(datum, translation(datum, nu.lift))
    assert tuple(x0.translation[datum.l:]) == tuple(nu.class_coords)
    assert stabilizes_base_alcove(datum, x0)
    return x0


def w_nu(datum, nu):
    """Linear part of the section: the homomorphism into the Weyl group."""
    return section_s(datum, nu).linear


def weyl_word(datum, w):
    """Express a Weyl element as a product of simple reflections."""
    _tables, p0 = _factor_tables(datum)
    word = []
    cur = w
    point = cur.act(p0)
    while not cur.is_identity():
        for j in range(datum.l):
            if datum.root_pairing(j, point) < 0:
                s = datum.simple_reflection(j)
                cur = s * cur
                point = s.act(point)
                word.append(j)
                break
        else:
            raise RuntimeError("descent failed: not a Weyl group element")
    return word


def defect(datum, nu):
    """Corank of the fixed space of w_nu, exact over the rationals."""
    w = w_nu(datum, nu)
    n = datum.n
    m = [
        [w.matrix[i][j] - int(i == j) for j in range(n)] for i in range(n)
    ]
    return exactlinalg.rank(m)


def chi(datum, i, nu):
    """The i-th character of the class group, as a rational in [0, 1)."""
    if not isinstance(nu, LambdaGElement):
        nu = LambdaGElement.from_lift(datum, nu)
    central = datum.p_M(nu.lift, frozenset(range(datum.l)))
    return frac_part(Q(central[i]))


def verify_defect_identity(datum, nu):
    """Report comparing d_G, half the defect, and the character sum."""
    if not isinstance(nu, LambdaGElement):
        nu = LambdaGElement.from_lift(datum, nu)
    x0 = section_s(datum, nu)
    w = x0.linear
    n = datum.n
    dfct = exactlinalg.rank(
        [[w.matrix[i][j] - int(i == j) for j in range(n)] for i in range(n)]
    )
    central = datum.p_M(nu.lift, frozenset(range(datum.l)))
    dg = d_G(datum, central)
    chi_sum = sum((chi(datum, i, nu) for i in range(n)), Q(0))
    ok = dg == Q(dfct, 2) and 2 * chi_sum == dfct
    return {
        "nu": [int(c) for c in nu.class_coords],
        "w_word": [j + 1 for j in weyl_word(datum, w)],
        "defect": dfct,
        "d_G": dg,
        "chi_sum_twice": 2 * chi_sum,
        "pass": ok,
    }


def _matrix_order(m, cap=10000):
    n = len(m)
    ident = [[int(i == j) for j in range(n)] for i in range(n)]
    acc = [list(r) for r in m]
    for k in range(1, cap + 1):
        if acc == ident:
            return k
        acc = exactlinalg.mat_mul(acc, [list(r) for r in m])
    raise RuntimeError("matrix order exceeds cap")


def reflection_char_multiset_check(datum, nu):
    """Galois-invariant form of the character decomposition.

    Factors the characteristic polynomial of w_nu into cyclotomics and
    matches, order by order, the multiplicities against the denominators
    of the characters chi_i, requiring full unit-group orbits.
    """
    if not isinstance(nu, LambdaGElement):
        nu = LambdaGElement.from_lift(datum, nu)
    w = w_nu(datum, nu)
    m = [list(r) for r in w.matrix]
    order = _matrix_order(m)
    poly = exactlinalg.charpoly(m)
    mults = {}
    for d in exactlinalg.divisors(order):
        phi_d = exactlinalg.cyclotomic(d)
        while True:
            q, r = exactlinalg.poly_divmod(poly, phi_d)
            if any(r) or len(q) < 1:
                break
            poly = q
            mults[d] = mults.get(d, 0) + 1
            if poly == [1]:
                break
    fully_factored = poly == [1]
    chis = [chi(datum, i, nu) for i in range(datum.n)]
    by_denom = {}
    for c in chis:
        by_denom.setdefault(int(c.denominator), []).append(c)
    ok = fully_factored
    details = []
    for d in sorted(set(mults) | set(by_denom)):
        mult = mults.get(d, 0)
        expected = mult * exactlinalg.euler_phi(d)
        have = sorted(by_denom.get(d, []))
        want = sorted(
            Q(k, d) for k in range(d) if _gcd(k if k else d, d) == 1
        ) * mult
        match = len(have) == expected and have == sorted(want)
        ok = ok and match
        details.append(
            {"order": d, "cyclotomic_multiplicity": mult,
             "char_count": len(have), "full_orbits": match}
        )
    return {
        "nu": [int(c) for c in nu.class_coords],
        "char_poly_fully_cyclotomic": fully_factored,
        "orders": details,
        "pass": ok,
    }


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a
