"""Newton stratum membership conditions, dimensions, codimensions, d_G."""

from dataclasses import dataclass

from .chamber import NewtonPoint, is_newton_point, stratum_of  # noqa: F401
from .rationals import NEG_INF, Q, fmt_scalar, frac_part, qceil, qfloor


@dataclass(frozen=True)
class StratumConditions:
    """Valuation conditions cutting out a stratum (open) or its closure."""

    mu: NewtonPoint
    closed: bool
    relations: tuple  # (index, "<=" or "==", bound)

    def accepts(self, d):
        for i, rel, bound in self.relations:
            v = d[i]
            if rel == "==":
                if v is NEG_INF or v != bound:
                    return False
            else:
                if v is not NEG_INF and v > bound:
                    return False
        return True

    def to_json(self):
        return [
            {"i": i + 1, "rel": "<=" if rel == "<=" else "=",
             "bound": fmt_scalar(bound)}
            for i, rel, bound in self.relations
        ]


def index_set(datum, mu):
    """I_mu: simple roots pairing to zero against mu."""
    point = mu.point if isinstance(mu, NewtonPoint) else mu
    return frozenset(
        j for j in range(datum.l) if datum.root_pairing(j, point) == 0
    )


def stratum_conditions(datum, mu, closed):
    """Condition system for the stratum of mu (closed=True: its closure)."""
    point = mu.point if isinstance(mu, NewtonPoint) else tuple(mu)
    imu = index_set(datum, point)
    rels = []
    for i in range(datum.n):
        if i >= datum.l:
            rels.append((i, "==", point[i]))
        elif closed or i in imu:
            rels.append((i, "<=", point[i]))
        else:
            rels.append((i, "==", point[i]))
    mu_np = mu if isinstance(mu, NewtonPoint) else is_newton_point(datum, point)
    return StratumConditions(mu_np, closed, tuple(rels))


def dim_leq(datum, mu):
    """dim of the closed stratum: sum of floors of the first l coordinates."""
    point = mu.point if isinstance(mu, NewtonPoint) else mu
    return int(sum(qfloor(point[i]) for i in range(datum.l)))


def codim(datum, nu, mu):
    """Codimension of the closed stratum of nu inside that of mu."""
    nu_pt = nu.point if isinstance(nu, NewtonPoint) else nu
    mu_pt = mu.point if isinstance(mu, NewtonPoint) else mu
    if not datum.leq(nu_pt, mu_pt):
        raise ValueError("codim requires nu <= mu")
    c = dim_leq(datum, mu) - dim_leq(datum, nu)
    assert c >= 0
    return c


def codim_chai(datum, nu, mu):
    """Ceiling form of the codimension, for integral dominant mu.

    Uses the rational fundamental weights (zero on the center), so the
    pairing with mu - nu only sees the semisimple part.
    """
    nu_pt = nu.point if isinstance(nu, NewtonPoint) else nu
    mu_pt = mu.point if isinstance(mu, NewtonPoint) else tuple(Q(c) for c in mu)
    if any(Q(c).denominator != 1 for c in mu_pt):
        raise ValueError("codim_chai needs an integral dominant mu")
    if not datum.is_dominant(mu_pt):
        raise ValueError("codim_chai needs an integral dominant mu")
    if not datum.leq(nu_pt, mu_pt):
        raise ValueError("codim_chai requires nu <= mu")
    # <varpi_i, mu - nu> = <omega_i, mu - nu> since mu - nu has no central part
    total = 0
    for i in range(datum.l):
        total += qceil(Q(mu_pt[i]) - nu_pt[i])
    assert total >= 0
    return int(total)


def d_G(datum, nu):
    """Sum of fractional parts of the pairings with the extended weights."""
    point = nu.point if isinstance(nu, NewtonPoint) else nu
    return sum((frac_part(Q(point[i])) for i in range(datum.l)), Q(0))


def rho_prime_pairing(datum, nu):
    """<rho', nu> with rho' the sum of the first l extended weights."""
    point = nu.point if isinstance(nu, NewtonPoint) else nu
    return sum((Q(point[i]) for i in range(datum.l)), Q(0))


def d_levi_check(datum, nu):
    """Lemma-style reduction: d_G computed in nu's own Levi agrees with d_G."""
    if not isinstance(nu, NewtonPoint):
        nu = is_newton_point(datum, nu)
        if nu is None:
            raise ValueError("not a Newton point")
    levi_datum, to_levi, _back = datum.levi(nu.levi)
    return d_G(levi_datum, to_levi(nu.point)) == d_G(datum, nu.point)
