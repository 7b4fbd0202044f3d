"""Dictionary from Hermitian symmetric space data to interpolation
parameters, operator eigenvalues, and membership tests for the positivity
sets decided by signed polynomial values.

Convention for signs: q_poly(lam) = (-1)^{|lam|} P_lam, and phi_j is the
column case written with the (rho^2 - x^2) factor order, so both are
nonnegative on the sets they cut out.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .exactnum import DomainError, is_exact
from .okounkov import Params, k_constant, okounkov_eval, okounkov_eval_scaled
from .partitions import enumerate_Lambda, format_partition, normalize, weight

__all__ = [
    "GroupData",
    "Verdict",
    "group_params",
    "shimura_eigenvalue",
    "q_poly",
    "q_poly_scaled",
    "phi_j",
    "in_G",
    "in_A_certified",
    "in_square",
    "in_U0_knapp_speh",
    "SIGN_DEADBAND",
]

# Relative sign deadband for float points; exact points never use it.
SIGN_DEADBAND = 1e-9


@dataclass(frozen=True)
class GroupData:
    """Root data of a rank-n Hermitian symmetric space: medium-root
    multiplicity d, half short-root multiplicity b, line-bundle twist p."""

    n: int
    d: int
    b: int
    p: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"rank must be >= 1, got {self.n}")
        if self.d < 0 or self.b < 0:
            raise DomainError(f"multiplicities must be nonnegative, got d={self.d}, b={self.b}")


@dataclass
class Verdict:
    """Outcome of a membership test.

    witness is the first failing partition (tuple) or column index (int);
    None on membership. degree_checked records how far the certification
    went: the weight bound for set-A style tests, the rank for column tests.
    """

    member: bool
    witness: object
    degree_checked: int

    def witness_str(self):
        if self.witness is None:
            return None
        if isinstance(self.witness, tuple):
            return format_partition(self.witness)
        return str(self.witness)

    def to_json(self) -> dict:
        return {
            "member": self.member,
            "witness": self.witness_str(),
            "degree_checked": self.degree_checked,
        }


def group_params(g: GroupData) -> Params:
    """(tau, alpha) = (d/2, (b+1+p)/2)."""
    return Params(g.n, Fraction(g.d, 2), Fraction(g.b + 1 + g.p, 2))


def shimura_eigenvalue(mu, pt, g: GroupData):
    """Eigenvalue polynomial value: k_constant(mu, tau) * P_mu(pt)."""
    p = group_params(g)
    return k_constant(mu, p.tau) * okounkov_eval(mu, pt, p)


def q_poly(lam, pt, p: Params):
    """Signed value (-1)^{|lam|} P_lam(pt)."""
    lam = normalize(lam)
    sign = -1 if weight(lam) % 2 else 1
    return sign * okounkov_eval(lam, pt, p)


def q_poly_scaled(lam, pt, p: Params):
    """q_poly together with the conditioning scale of the tableau sum."""
    lam = normalize(lam)
    sign = -1 if weight(lam) % 2 else 1
    value, scale = okounkov_eval_scaled(lam, pt, p)
    return sign * value, scale


def phi_j(j: int, pt, p: Params):
    """Column test polynomial: sum over j-subsets of prod (rho^2 - x^2).

    Equals q_poly(1^j, ...) identically.
    """
    value, _ = _phi_j_scaled(j, pt, p)
    return value


def _phi_j_scaled(j: int, pt, p: Params):
    if not 1 <= j <= p.n:
        raise DomainError(f"column height {j} outside 1..{p.n}")
    if len(pt) != p.n:
        raise DomainError(f"point has length {len(pt)}, expected {p.n}")
    sq = [x * x for x in pt]
    rsq = [r * r for r in p.rho]
    total = 0
    scale = 0.0
    for subset in itertools.combinations(range(1, p.n + 1), j):
        prod = 1
        mag = 1.0
        for k, i in enumerate(subset, start=1):
            fac = rsq[i + j - k - 1] - sq[i - 1]
            prod = prod * fac
            mag = mag * abs(float(fac))
        total = total + prod
        scale += mag
    if isinstance(total, int):
        total = Fraction(total)
    return total, scale


def _is_negative(value, scale) -> bool:
    """Sign test with the float deadband; exact values compare exactly."""
    if is_exact(value):
        return value < 0
    return value < -SIGN_DEADBAND * (1.0 + scale)


def in_G(pt, p: Params) -> Verdict:
    """Column-positivity membership: all phi_j >= 0, witness first failure."""
    for j in range(1, p.n + 1):
        value, scale = _phi_j_scaled(j, pt, p)
        if _is_negative(value, scale):
            return Verdict(False, j, p.n)
    return Verdict(True, None, p.n)


def in_A_certified(pt, p: Params, max_weight: int) -> Verdict:
    """Bounded certification of full positivity: q_lam >= 0 for every lam
    with |lam| <= max_weight. Membership means only "no witness up to the
    bound"; the set itself is an infinite intersection.
    """
    if max_weight < 1:
        raise DomainError(f"need max_weight >= 1, got {max_weight}")
    for lam in enumerate_Lambda(p.n, max_weight):
        if not lam:
            continue
        value, scale = q_poly_scaled(lam, pt, p)
        if _is_negative(value, scale):
            return Verdict(False, lam, max_weight)
    return Verdict(True, None, max_weight)


def in_square(pt, p: Params) -> bool:
    """The closed box [0, rho_n]^n intersected with the decreasing chamber."""
    rho_n = p.rho[p.n - 1]
    for a, b in zip(pt, pt[1:]):
        if a < b:
            return False
    return all(0 <= x <= rho_n for x in pt)


def in_U0_knapp_speh(pt, b: int) -> bool:
    """The explicit complementary-series region for the rank-2 family with
    half short-root multiplicity b: a base triangle plus, for
    j = 1..floor((b-1)/2), shifted triangles and segments inside the box
    [0, rho2]^2, all taken in the decreasing chamber.

    The base triangle x1+x2 <= 1 is intersected with the box as well; for
    b = 0 the printed region otherwise sticks out of the column-positive
    set it must embed into (see the decision log).
    """
    if b < 0:
        raise DomainError(f"need b >= 0, got {b}")
    x1, x2 = pt
    rho2 = Fraction(b + 1, 2)
    in_box = 0 <= x2 <= x1 <= rho2
    if not in_box:
        return False
    if x1 + x2 <= 1:
        return True
    k = (b - 1) // 2 if b >= 3 else 0
    for j in range(1, k + 1):
        if x1 - x2 >= j and x1 + x2 <= j + 1:
            return True
        if abs(x1 - x2 - j) <= 1e-9:
            return True
    return False
