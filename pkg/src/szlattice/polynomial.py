"""Sparse multivariate polynomials over Z with a round-trippable text form.

Text grammar: terms joined by ``+``/``-`` (the Unicode minus is accepted),
each term an optional integer coefficient times ``x<i>`` or ``x<i>^<e>``
factors, optionally separated by ``*``.  Example: ``x0^2 + x1^2 - x2^2``.
"""
from math import gcd as igcd

__all__ = [
    "MultivariatePolynomial",
    "ParseError",
    "parse_polynomial",
    "parse_polynomial_file",
    "poly_gcd",
    "squarefree_part",
]


class ParseError(ValueError):
    def __init__(self, message, text, pos):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.pos = pos
        self.text = text


class MultivariatePolynomial:
    """Immutable polynomial in ``x0 .. x{n_vars-1}`` with integer coefficients.

    ``terms`` maps exponent tuples to nonzero coefficients.
    """

    __slots__ = ("n_vars", "terms", "_hash")

    def __init__(self, n_vars, terms=None):
        if n_vars < 0:
            raise ValueError("n_vars must be >= 0")
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != n_vars:
                raise ValueError(f"exponent {exp} does not have {n_vars} entries")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent in {exp}")
            c = int(c)
            if c:
                clean[exp] = clean.get(exp, 0) + c
                if not clean[exp]:
                    del clean[exp]
        self.n_vars = n_vars
        self.terms = clean
        self._hash = None

    # construction helpers

    @classmethod
    def constant(cls, c, n_vars):
        return cls(n_vars, {(0,) * n_vars: c})

    @classmethod
    def variable(cls, i, n_vars):
        if not 0 <= i < n_vars:
            raise ValueError(f"variable x{i} out of range for {n_vars} variables")
        return cls(n_vars, {tuple(int(j == i) for j in range(n_vars)): 1})

    @classmethod
    def linear_form(cls, coeffs):
        n = len(coeffs)
        return cls(n, {tuple(int(j == i) for j in range(n)): c for i, c in enumerate(coeffs)})

    @classmethod
    def parse(cls, text, n_vars=None):
        return parse_polynomial(text, n_vars)

    # basic properties

    def is_zero(self):
        return not self.terms

    @property
    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i):
        return max((e[i] for e in self.terms), default=-1)

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def is_homogeneous(self):
        return len({sum(e) for e in self.terms}) <= 1

    def variables(self):
        return sorted({i for e in self.terms for i, a in enumerate(e) if a})

    def content(self):
        g = 0
        for c in self.terms.values():
            g = igcd(g, c)
        return g

    def leading_term(self):
        """Lexicographically largest ``(exponent, coefficient)``."""
        e = max(self.terms)
        return e, self.terms[e]

    # comparison and hashing

    def __eq__(self, other):
        if isinstance(other, int):
            other = MultivariatePolynomial.constant(other, self.n_vars)
        if not isinstance(other, MultivariatePolynomial):
            return NotImplemented
        return self.n_vars == other.n_vars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n_vars, frozenset(self.terms.items())))
        return self._hash

    # arithmetic

    def _coerce(self, other):
        if isinstance(other, MultivariatePolynomial):
            if other.n_vars != self.n_vars:
                raise ValueError("polynomials have different numbers of variables")
            return other
        if isinstance(other, int):
            return MultivariatePolynomial.constant(other, self.n_vars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) + c
        return MultivariatePolynomial(self.n_vars, t)

    __radd__ = __add__

    def __neg__(self):
        return MultivariatePolynomial(self.n_vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return MultivariatePolynomial(self.n_vars, t)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = MultivariatePolynomial.constant(1, self.n_vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale_exact(self, c):
        """Divide every coefficient by the integer ``c`` (must divide)."""
        t = {}
        for e, a in self.terms.items():
            q, r = divmod(a, c)
            if r:
                raise ValueError(f"{c} does not divide coefficient {a}")
            t[e] = q
        return MultivariatePolynomial(self.n_vars, t)

    def divexact(self, other):
        """Exact quotient ``self / other``; raises ``ValueError`` if ``other``
        does not divide ``self`` in Z[x]."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lb, cb = other.leading_term()
        rem = dict(self.terms)
        q = {}
        while rem:
            lr = max(rem)
            cr = rem[lr]
            shift = tuple(a - b for a, b in zip(lr, lb))
            if min(shift) < 0 or cr % cb:
                raise ValueError("polynomial division is not exact")
            cq = cr // cb
            q[shift] = cq
            for e, c in other.terms.items():
                key = tuple(a + b for a, b in zip(e, shift))
                v = rem.get(key, 0) - cq * c
                if v:
                    rem[key] = v
                else:
                    rem.pop(key, None)
        return MultivariatePolynomial(self.n_vars, q)

    def derivative(self, i):
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                t[tuple(f)] = c * e[i]
        return MultivariatePolynomial(self.n_vars, t)

    # views as univariate polynomials

    def coeffs_in(self, i):
        """Coefficients of ``x_i^0, x_i^1, ...`` as polynomials free of ``x_i``."""
        d = self.degree_in(i)
        buckets = [{} for _ in range(max(d, 0) + 1)]
        for e, c in self.terms.items():
            f = e[:i] + (0,) + e[i + 1:]
            buckets[e[i]][f] = c
        return [MultivariatePolynomial(self.n_vars, b) for b in buckets]

    @classmethod
    def from_coeffs_in(cls, i, coeffs, n_vars):
        t = {}
        for k, p in enumerate(coeffs):
            for e, c in p.terms.items():
                f = e[:i] + (e[i] + k,) + e[i + 1:]
                t[f] = t.get(f, 0) + c
        return cls(n_vars, t)

    # evaluation

    def evaluate(self, point):
        if len(point) != self.n_vars:
            raise ValueError(
                f"point has {len(point)} coordinates, polynomial has {self.n_vars} variables"
            )
        total = 0
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term *= x**k
            total += term
        return total

    def compile(self):
        """A fast callable taking the coordinates as positional arguments."""
        args = ", ".join(f"x{i}" for i in range(self.n_vars))
        parts = []
        for e, c in self.terms.items():
            factors = [repr(c)] + [f"x{i}**{k}" if k > 1 else f"x{i}" for i, k in enumerate(e) if k]
            parts.append("*".join(factors))
        body = " + ".join(parts) or "0"
        return eval(f"lambda {args}: {body}", {})

    def substitute_scale(self, lam):
        """``p(lam * x)`` (used to test homogeneity)."""
        return MultivariatePolynomial(
            self.n_vars, {e: c * lam ** sum(e) for e, c in self.terms.items()}
        )

    # text form

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda ec: (sum(ec[0]), ec[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for idx, (e, c) in enumerate(self.sorted_terms()):
            mono = "*".join(f"x{i}^{k}" if k > 1 else f"x{i}" for i, k in enumerate(e) if k)
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if idx == 0:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append((" - " if c < 0 else " + ") + body)
        return "".join(out)

    def __repr__(self):
        return f"MultivariatePolynomial({self.n_vars}, {str(self)!r})"


_MINUS = "-−"


def parse_polynomial(text, n_vars=None):
    """Parse the text grammar.  ``n_vars`` defaults to one more than the
    largest variable index that appears."""
    pos = 0
    n = len(text)
    terms = []  # (sign, coeff, {var: exp})

    def skip():
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def integer():
        nonlocal pos
        start = pos
        while pos < n and text[pos].isdigit():
            pos += 1
        if start == pos:
            raise ParseError("expected an integer", text, pos)
        return int(text[start:pos])

    def factor(coeff, mono):
        nonlocal pos
        skip()
        if pos < n and text[pos].isdigit():
            return coeff * integer(), mono
        if pos < n and text[pos] == "x":
            pos += 1
            if not (pos < n and text[pos].isdigit()):
                raise ParseError("expected a variable index after 'x'", text, pos)
            var = integer()
            skip()
            exp = 1
            if pos < n and text[pos] == "^":
                pos += 1
                skip()
                exp = integer()
            mono[var] = mono.get(var, 0) + exp
            return coeff, mono
        what = repr(text[pos]) if pos < n else "end of input"
        raise ParseError(f"expected a coefficient or variable, found {what}", text, pos)

    def term(sign):
        nonlocal pos
        coeff, mono = factor(1, {})
        while True:
            skip()
            if pos < n and text[pos] == "*":
                pos += 1
                coeff, mono = factor(coeff, mono)
            elif pos < n and (text[pos] == "x" or text[pos].isdigit()):
                coeff, mono = factor(coeff, mono)
            else:
                break
        terms.append((sign, coeff, mono))

    skip()
    if pos == n:
        raise ParseError("empty polynomial", text, pos)
    sign = 1
    if text[pos] in _MINUS:
        sign = -1
        pos += 1
    elif text[pos] == "+":
        pos += 1
    term(sign)
    while True:
        skip()
        if pos == n:
            break
        if text[pos] in _MINUS:
            sign = -1
        elif text[pos] == "+":
            sign = 1
        else:
            raise ParseError(f"expected '+' or '-', found {text[pos]!r}", text, pos)
        pos += 1
        skip()
        term(sign)

    top = max((v for _, _, mono in terms for v in mono), default=-1)
    if n_vars is None:
        n_vars = top + 1
    elif top >= n_vars:
        raise ParseError(f"variable x{top} exceeds the {n_vars} declared variables", text, 0)
    t = {}
    for sign, coeff, mono in terms:
        e = tuple(mono.get(i, 0) for i in range(n_vars))
        t[e] = t.get(e, 0) + sign * coeff
    return MultivariatePolynomial(n_vars, t)


def parse_polynomial_file(text, n_vars=None):
    """One polynomial per nonblank line; ``#`` starts a comment.  A line
    ``# vars: N`` fixes the number of variables (otherwise the largest index
    used across all lines decides)."""
    lines = []
    for raw in text.splitlines():
        s = raw.strip()
        if s.startswith("#"):
            body = s[1:].strip()
            if body.lower().startswith("vars:") and n_vars is None:
                n_vars = int(body[5:].strip())
            continue
        if s:
            lines.append(s.split("#", 1)[0].strip())
    if not lines:
        raise ValueError("no polynomials in input")
    if n_vars is None:
        n_vars = max(parse_polynomial(s).n_vars for s in lines)
    return [parse_polynomial(s, n_vars) for s in lines]


# gcd and squarefree part over Z[x0, ..., x_{n-1}]


def _top_var(*polys):
    vs = [v for p in polys for v in p.variables()]
    return max(vs) if vs else None


def _normalize_sign(p):
    if p.is_zero():
        return p
    return -p if p.leading_term()[1] < 0 else p


def _content_in(p, v):
    g = MultivariatePolynomial(p.n_vars)
    for c in p.coeffs_in(v):
        if not c.is_zero():
            g = poly_gcd(g, c)
    return g


def _prem(a, b, v):
    """Pseudo-remainder of ``a`` by ``b`` as polynomials in ``x_v``."""
    nv = a.n_vars
    bc = b.coeffs_in(v)
    m = len(bc) - 1
    lc = bc[m]
    r = a.coeffs_in(v)
    e = len(r) - 1 - m + 1
    while len(r) - 1 >= m and any(not c.is_zero() for c in r):
        d = len(r) - 1
        c = r[d]
        r = [lc * ri for ri in r]
        for j in range(m + 1):
            r[d - m + j] = r[d - m + j] - c * bc[j]
        r.pop()
        while r and r[-1].is_zero():
            r.pop()
        e -= 1
    if not r:
        return MultivariatePolynomial(nv)
    out = MultivariatePolynomial.from_coeffs_in(v, r, nv)
    return out * lc**e if e > 0 else out


def poly_gcd(a, b):
    """Greatest common divisor in Z[x], normalized to a positive leading
    (lexicographic) coefficient.  Recursive primitive PRS."""
    if a.is_zero():
        return _normalize_sign(b)
    if b.is_zero():
        return _normalize_sign(a)
    v = _top_var(a, b)
    if v is None:
        return MultivariatePolynomial.constant(igcd(a.leading_term()[1], b.leading_term()[1]), a.n_vars)
    ca, cb = _content_in(a, v), _content_in(b, v)
    pa, pb = a.divexact(ca), b.divexact(cb)
    c = poly_gcd(ca, cb)
    if pa.degree_in(v) < pb.degree_in(v):
        pa, pb = pb, pa
    while not pb.is_zero() and pb.degree_in(v) > 0:
        r = _prem(pa, pb, v)
        pa = pb
        pb = r.divexact(_content_in(r, v)) if not r.is_zero() else r
    g = pa if pb.is_zero() else MultivariatePolynomial.constant(1, a.n_vars)
    if g.degree_in(v) > 0:
        g = g.divexact(_content_in(g, v))
    else:
        g = MultivariatePolynomial.constant(1, a.n_vars)
    return _normalize_sign(c * g)


def squarefree_part(p):
    """Product of the distinct irreducible factors of ``p`` (primitive,
    positive leading coefficient)."""
    if p.is_zero():
        raise ValueError("the zero polynomial has no squarefree part")
    g = p
    for v in p.variables():
        g = poly_gcd(g, p.derivative(v))
    q = p.divexact(g)
    return _normalize_sign(q.scale_exact(q.content()))
