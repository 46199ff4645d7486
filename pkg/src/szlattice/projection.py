"""Coordinate projections of space curves in A^3 through resultants."""
from dataclasses import dataclass
from typing import NamedTuple

from .polynomial import MultivariatePolynomial, squarefree_part

__all__ = [
    "SpaceCurve",
    "ProjectionCollapseError",
    "ProjectionContractError",
    "ProjectionChoice",
    "sylvester_matrix",
    "sylvester_resultant",
    "eliminant",
    "projection_degree",
    "projection_report",
    "best_projection",
    "parametrized_curve",
]


class ProjectionCollapseError(ValueError):
    """The projection drops the dimension of the curve (zero eliminant)."""


class ProjectionContractError(AssertionError):
    """``sqrt(d) <= d' <= d`` failed for the best projection."""


@dataclass(frozen=True)
class SpaceCurve:
    p: MultivariatePolynomial
    q: MultivariatePolynomial
    declared_degree: int

    def __post_init__(self):
        for g in (self.p, self.q):
            if g.n_vars != 3:
                raise ValueError("space curves are cut out by polynomials in x0, x1, x2")
            if g.is_constant():
                raise ValueError("generators must be nonconstant")
        if self.declared_degree < 1:
            raise ValueError("declared_degree must be >= 1")


def parametrized_curve(f, g):
    """The curve ``t -> (t, f(t), g(t))`` for integer coefficient lists
    ``f``, ``g`` (constant term first), cut out by ``x1 - f(x0)`` and
    ``x2 - g(x0)``; its degree is ``max(1, deg f, deg g)``."""
    x0 = MultivariatePolynomial.variable(0, 3)

    def univariate(cs):
        out = MultivariatePolynomial(3)
        for k, c in enumerate(cs):
            out = out + c * x0**k
        return out

    p = MultivariatePolynomial.variable(1, 3) - univariate(f)
    q = MultivariatePolynomial.variable(2, 3) - univariate(g)
    deg = max(1, _udeg(f), _udeg(g))
    return SpaceCurve(p, q, deg)


def _udeg(cs):
    return max((k for k, c in enumerate(cs) if c), default=0)


def sylvester_matrix(p, q, var):
    a = p.coeffs_in(var)[::-1]
    b = q.coeffs_in(var)[::-1]
    m, l = len(a) - 1, len(b) - 1
    zero = MultivariatePolynomial(p.n_vars)
    size = m + l
    rows = []
    for i in range(l):
        rows.append([zero] * i + a + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + b + [zero] * (size - l - 1 - i))
    return rows


def _det(rows):
    # Bareiss over Z[x]; every division below is exact
    A = [list(r) for r in rows]
    n = len(A)
    nv = A[0][0].n_vars
    sign = 1
    prev = MultivariatePolynomial.constant(1, nv)
    for k in range(n - 1):
        if A[k][k].is_zero():
            for i in range(k + 1, n):
                if not A[i][k].is_zero():
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return MultivariatePolynomial(nv)
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * akk - aik * A[k][j]).divexact(prev)
        prev = akk
    return A[n - 1][n - 1] if sign > 0 else -A[n - 1][n - 1]


def sylvester_resultant(p, q, var):
    """Resultant of ``p`` and ``q`` with respect to ``x_var``."""
    if p.n_vars != q.n_vars:
        raise ValueError("polynomials have different numbers of variables")
    if p.degree_in(var) < 1 or q.degree_in(var) < 1:
        raise ValueError(f"both polynomials need positive degree in x{var}")
    return _det(sylvester_matrix(p, q, var))


def eliminant(p, q, var):
    """A polynomial free of ``x_var`` vanishing on the projection of
    ``V(p, q)``: the resultant, or ``p^deg_var(q)`` when ``p`` does not
    involve ``x_var`` (and symmetrically), matching the usual convention
    for a degree-0 argument."""
    dp, dq = p.degree_in(var), q.degree_in(var)
    if dp >= 1 and dq >= 1:
        return sylvester_resultant(p, q, var)
    if dp <= 0 and dq <= 0:
        raise ProjectionCollapseError(
            f"neither generator involves x{var}; the image is not a curve"
        )
    return p**dq if dp <= 0 else q**dp


def projection_degree(C, drop):
    """Degree of the reduced polynomial defining the image of ``C`` after
    forgetting coordinate ``drop``."""
    R = eliminant(C.p, C.q, drop)
    if R.is_zero():
        raise ProjectionCollapseError(
            f"eliminant vanishes identically: dropping x{drop} collapses the curve"
        )
    if R.is_constant():
        return 0
    return squarefree_part(R).degree


def projection_report(C, drop):
    """``{"eliminant_degree", "squarefree_degree"}`` for one projection, or
    ``{"collapsed": reason}``."""
    try:
        R = eliminant(C.p, C.q, drop)
        if R.is_zero():
            raise ProjectionCollapseError("eliminant vanishes identically")
    except ProjectionCollapseError as exc:
        return {"drop": drop, "collapsed": str(exc)}
    sq = 0 if R.is_constant() else squarefree_part(R).degree
    return {
        "drop": drop,
        "eliminant": str(R),
        "eliminant_degree": R.degree,
        "squarefree_degree": sq,
    }


class ProjectionChoice(NamedTuple):
    drop: int
    d_prime: int
    degrees: dict


def best_projection(C, check=True):
    """The coordinate projection keeping the most degree (ties: lowest
    index).  With ``check`` the bound ``d'^2 >= d >= d'`` is enforced."""
    degrees = {}
    for drop in range(3):
        try:
            degrees[drop] = projection_degree(C, drop)
        except ProjectionCollapseError:
            continue
    if not degrees:
        raise ProjectionCollapseError("every coordinate projection collapses the curve")
    best = max(degrees, key=lambda i: (degrees[i], -i))
    d_prime = degrees[best]
    d = C.declared_degree
    if check and not (d_prime <= d and d_prime * d_prime >= d):
        raise ProjectionContractError(
            f"best projection degree {d_prime} violates sqrt({d}) <= d' <= {d}"
        )
    return ProjectionChoice(best, d_prime, degrees)
