"""Built-in surfaces, ideals, point configurations and the blow-up lattice."""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from togliatti.apolar import GradedIdeal
from togliatti.errors import DataIntegrityError, RingMismatchError, UnknownNameError
from togliatti.jets import BIPROJECTIVE, PROJECTIVE, Parametrization
from togliatti.polycore import parse_poly

XYZ = ("x", "y", "z")
ABC = ("a", "b", "c")


def target_ring(n):
    return tuple(f"u{i}" for i in range(n))


# blow-up lattice


@dataclass(frozen=True)
class PicardClass:
    """Class d*H - sum m_i*E_i on the blow-up of the plane at up to 9 points."""

    d: int
    mults: tuple = ()

    def __post_init__(self):
        mults = tuple(int(m) for m in self.mults)
        if len(mults) > 9:
            raise ValueError("at most 9 exceptional classes")
        object.__setattr__(self, "mults", mults + (0,) * (9 - len(mults)))
        object.__setattr__(self, "d", int(self.d))

    def __add__(self, other):
        return PicardClass(self.d + other.d, tuple(a + b for a, b in zip(self.mults, other.mults)))

    def __sub__(self, other):
        return PicardClass(self.d - other.d, tuple(a - b for a, b in zip(self.mults, other.mults)))

    def __neg__(self):
        return PicardClass(-self.d, tuple(-a for a in self.mults))

    def __rmul__(self, k):
        return PicardClass(k * self.d, tuple(k * a for a in self.mults))

    def __str__(self):
        return f"({self.d}; {', '.join(str(m) for m in self.mults)})"


def H():
    return PicardClass(1)


def E(i):
    """Exceptional class E_i, 1-based; note E_i = (0; 0..-1..0)."""
    mults = [0] * 9
    mults[i - 1] = -1
    return PicardClass(0, tuple(mults))


def intersect(c1, c2):
    return c1.d * c2.d - sum(a * b for a, b in zip(c1.mults, c2.mults))


def image_degree(c):
    """Self-intersection; the degree of the image when the map is birational onto it."""
    return intersect(c, c)


def line_class(points):
    """Proper transform of a line through the listed (1-based) points."""
    c = H()
    for i in points:
        c = c - E(i)
    return c


B3_M = PicardClass(4, (1,) * 9)
B3_N = {1: line_class([2, 3, 8, 9]), 2: line_class([1, 3, 6, 7]), 3: line_class([1, 2, 4, 5])}
MINUS_K = PicardClass(3, (1,) * 9)
TOGLIATTI_M = PicardClass(3, (1, 1, 1))
COMPANION_CLASS = PicardClass(3)

# point configurations

B3_POINTS = (
    (1, 0, 0), (0, 1, 0), (0, 0, 1),
    (1, 1, 0), (1, -1, 0), (1, 0, 1),
    (1, 0, -1), (0, 1, 1), (0, 1, -1),
)
COORDINATE_POINTS = ((1, 0, 0), (0, 1, 0), (0, 0, 1))

POINT_SETS = {"b3": B3_POINTS, "togliatti": COORDINATE_POINTS}


def point_set(name):
    try:
        return tuple(tuple(Fraction(c) for c in p) for p in POINT_SETS[name])
    except KeyError:
        raise UnknownNameError(f"unknown point configuration {name!r}; known: {sorted(POINT_SETS)}") from None


# ideals

_IDEALS = {
    "J": (XYZ, ["x^4", "y^4", "z^4", "(x-y)^4", "(x+y)^4", "(x-z)^4", "(x+z)^4", "(y-z)^4", "(y+z)^4"]),
    "I_prime": (ABC, ["a^3", "b^3", "c^3", "a*(b^2-c^2)", "b*(a^2-c^2)", "c*(a^2-b^2)"]),
    "I_T": (XYZ, ["x^3", "y^3", "z^3", "x*y*z"]),
    "squares": (XYZ, ["x^2", "y^2", "z^2"]),
    "I_Z": (XYZ, ["x*y*z", "x*y*(x^2-y^2)", "x*z*(x^2-z^2)", "y*z*(y^2-z^2)"]),
}


def ideal_names():
    return sorted(_IDEALS)


def load_ideal(name):
    try:
        ring, gens = _IDEALS[name]
    except KeyError:
        raise UnknownNameError(f"unknown ideal {name!r}; known: {ideal_names()}") from None
    return GradedIdeal(ring, tuple(parse_poly(g, ring) for g in gens), name)


# surfaces


@dataclass(frozen=True)
class SurfaceEntry:
    name: str
    parametrization: Parametrization
    ideal_generators: tuple = ()
    picard_class: Optional[PicardClass] = None
    expected: dict = field(default_factory=dict)
    charts: tuple = ()
    description: str = ""

    @property
    def target_ring(self):
        return target_ring(len(self.parametrization.coordinates))

    def default_jet_source(self):
        """Parametrization used for jets: the map itself or its first chart."""
        return self.charts[0] if self.charts else self.parametrization

    def as_dict(self):
        p = self.parametrization
        return {
            "name": self.name,
            "description": self.description,
            "kind": p.kind,
            "source": list(p.source_vars),
            "coordinates": [str(f) for f in p.coordinates],
            "ideal_generators": [str(g) for g in self.ideal_generators],
            "picard_class": str(self.picard_class) if self.picard_class else None,
            "expected": self.expected,
            "charts": [{"name": c.name, "coordinates": [str(f) for f in c.coordinates]} for c in self.charts],
        }


def _forms(texts, ring):
    return tuple(parse_poly(t, ring) for t in texts)


_SHIFRIN_SRC = ("s", "t", "u", "v")


def _shifrin():
    coords = _forms(["s*t*v", "t^2*u", "s^2*v", "s*t*u", "s^2*u", "t^2*v"], _SHIFRIN_SRC)
    p = Parametrization(BIPROJECTIVE, _SHIFRIN_SRC, coords, name="shifrin")
    charts = tuple(p.chart(ones, f"shifrin[{ones[0]}={ones[1]}=1]")
                   for ones in (("t", "v"), ("t", "u"), ("s", "v"), ("s", "u")))
    gens = _forms(["u3^2-u1*u4", "u2*u3-u0*u4", "u0*u3-u4*u5",
                   "u1*u2-u4*u5", "u0*u1-u3*u5", "u0^2-u2*u5"], target_ring(6))
    return SurfaceEntry("shifrin", p, gens, None,
                        {"osculating_dim": 4, "laplace": 1, "perfectly_hypo_osculating": True},
                        charts, "image of P1xP1 under the complete (2,1) system")


def _togliatti():
    coords = _forms(["x^2*y", "x^2*z", "y^2*x", "y^2*z", "z^2*x", "z^2*y"], XYZ)
    gens = _forms(["u2*u4-u0*u5", "u1*u3-u0*u5", "u3*u4^2-u1*u5^2", "u0*u4^2-u1^2*u5",
                   "u3^2*u4-u2*u5^2", "u0*u3*u4-u1*u2*u5", "u0*u3^2-u2^2*u5",
                   "u1*u2^2-u0^2*u3", "u1^2*u2-u0^2*u4"], target_ring(6))
    return SurfaceEntry("togliatti", Parametrization(PROJECTIVE, XYZ, coords, name="togliatti"), gens,
                        TOGLIATTI_M, {"osculating_dim": 4, "laplace": 1, "degree": 6},
                        description="cubics through the coordinate points, minus xyz")


def _togliatti_lift():
    coords = _forms(["x^2*y", "x^2*z", "y^2*x", "y^2*z", "z^2*x", "z^2*y", "x*y*z"], XYZ)
    return SurfaceEntry("togliatti_lift", Parametrization(PROJECTIVE, XYZ, coords, name="togliatti_lift"), (),
                        TOGLIATTI_M, {"osculating_dim": 5, "laplace": 0, "degree": 6},
                        description="anticanonical del Pezzo sextic in P6")


def _b3():
    coords = _forms(["x^2*y*z", "x*y^2*z", "x*y*z^2", "x*y*(x^2-y^2)", "x*z*(x^2-z^2)", "y*z*(y^2-z^2)"], XYZ)
    gens = _forms(["u1^2-u2^2-u0*u5", "u0^2-u2^2-u1*u4", "u2*u3-u1*u4+u0*u5",
                   "u0*u1*u3-u0*u2*u4+u1*u2*u5-u3*u4*u5"], target_ring(6))
    return SurfaceEntry("b3", Parametrization(PROJECTIVE, XYZ, coords, name="b3"), gens, B3_M,
                        {"osculating_dim": 4, "laplace": 1, "degree": 7},
                        description="quartics through the nine B3 points")


def _b3_companion():
    coords = _forms(["a^3", "b^3", "c^3", "a*(b^2-c^2)", "b*(a^2-c^2)", "c*(a^2-b^2)"], ABC)
    p = Parametrization(PROJECTIVE, ABC, coords, point_vars=XYZ, name="b3_companion")
    return SurfaceEntry("b3_companion", p, (), COMPANION_CLASS,
                        {"osculating_dim": 4, "laplace": 1, "degree": 9},
                        description="cubic system dual to the unexpected quartics")


_BUILDERS = {
    "shifrin": _shifrin,
    "togliatti": _togliatti,
    "togliatti_lift": _togliatti_lift,
    "b3": _b3,
    "b3_companion": _b3_companion,
}


def surface_names():
    return list(_BUILDERS)


def verify_ideal_membership(entry, generators=None):
    """For each generator, whether it vanishes on the parametrization."""
    gens = entry.ideal_generators if generators is None else tuple(generators)
    p = entry.parametrization
    ring = target_ring(len(p.coordinates))
    assignment = dict(zip(ring, p.coordinates))
    out = []
    for g in gens:
        if len(g.ring) != len(ring) or g.ring != ring:
            raise RingMismatchError(f"generator ring {g.ring} does not match {ring}")
        out.append(g.substitute(assignment, p.source_vars).is_zero())
    return out


@lru_cache(maxsize=None)
def load_surface(name):
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise UnknownNameError(f"unknown surface {name!r}; known: {surface_names()}") from None
    entry = builder()
    bad = [str(g) for g, ok in zip(entry.ideal_generators, verify_ideal_membership(entry)) if not ok]
    if bad:
        raise DataIntegrityError(f"{name}: generators do not vanish on the parametrization: {bad}")
    return entry


def restricted_image(p, var):
    """Image point of the line ``var = 0`` if the map contracts it, else None."""
    restricted = [f.specialize({var: 0}) for f in p.coordinates]
    nonzero = [(i, f) for i, f in enumerate(restricted) if f]
    if not nonzero:
        return None
    i0, ref = nonzero[0]
    point = []
    for f in restricted:
        if not f:
            point.append(Fraction(0))
            continue
        ratio = _scalar_ratio(f, ref)
        if ratio is None:
            return None
        point.append(ratio)
    return tuple(point)


def _scalar_ratio(f, g):
    e, c = g.leading_term()
    r = Fraction(f.coeff(e)) / Fraction(c)
    if r == 0 or f != g.scale(r):
        return None
    return r
