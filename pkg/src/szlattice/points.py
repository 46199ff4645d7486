"""Projective points with primitive, sign-normalized integer coordinates."""
from dataclasses import dataclass
from math import gcd


def content(v):
    g = 0
    for a in v:
        g = gcd(g, a)
    return g


def is_sign_normalized(v):
    for a in v:
        if a:
            return a > 0
    return False


def normalize(v):
    """Primitive representative of the line through ``v`` whose first
    nonzero coordinate is positive."""
    g = content(v)
    if g == 0:
        raise ValueError("the zero vector is not a projective point")
    for a in v:
        if a:
            if a < 0:
                g = -g
            break
    return tuple(a // g for a in v)


@dataclass(frozen=True, order=True)
class ProjPoint:
    """A point of P^n(Q) stored as its canonical integer representative."""

    coords: tuple

    def __post_init__(self):
        c = tuple(int(a) for a in self.coords)
        object.__setattr__(self, "coords", c)
        if len(c) < 2:
            raise ValueError("a point of P^n needs at least two coordinates")
        if content(c) != 1:
            raise ValueError(f"coordinates {c} are not primitive")
        if not is_sign_normalized(c):
            raise ValueError(f"first nonzero coordinate of {c} is negative")

    @classmethod
    def from_vector(cls, v):
        return cls(normalize(tuple(v)))

    @classmethod
    def parse(cls, text):
        """Parse the colon-separated form, e.g. ``"1:2:2"`` (any representative)."""
        try:
            v = tuple(int(part) for part in text.strip().split(":"))
        except ValueError:
            raise ValueError(f"malformed point {text!r}") from None
        return cls.from_vector(v)

    @property
    def n(self):
        return len(self.coords) - 1

    @property
    def height(self):
        return max(abs(a) for a in self.coords)

    @property
    def norm_sq(self):
        return sum(a * a for a in self.coords)

    def __str__(self):
        return ":".join(str(a) for a in self.coords)
