"""
Combinatorics of the necklace category.

A necklace is a pair (T, p): an integer spine length p >= 0 and a set of
joints T, a subset of {0..p} containing 0 and p.  It stands for the wedge
of simplices Delta^{n_1} v ... v Delta^{n_k} with n_i = t_i - t_{i-1}.
A necklace map (T, p) -> (U, q) is a monotone map f: [p] -> [q] with
f(0) = 0, f(p) = q and U contained in f(T).

Everything here is immutable and exact.  Signs are returned as plain
integers; reduce mod 2 only where a sign is applied.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations, combinations_with_replacement
from typing import Iterator, Sequence


# --------------------------------------------------------------------------
# sign statistics


def eps_g(*ns: int) -> int:
    """eps_g(i_1, ..., i_r) = sum_{l=1}^{r-1} (r - l)(i_l - 1)."""
    r = len(ns)
    return sum((r - l) * (ns[l - 1] - 1) for l in range(1, r))


def eps_c(*ts: int) -> int:
    """eps_c(t_1, ..., t_{l-1}) = t_1 + ... + t_{l-1} - (l-1)l/2.

    Evaluated on the interior joints of a necklace this agrees with eps_g
    of its bead lengths.
    """
    k = len(ts)
    return sum(ts) - k * (k + 1) // 2


def koszul(*degrees: int) -> int:
    """sigma(i_1, ..., i_n) = sum_{a<b} i_a i_b, the sign exponent of reversal."""
    total = 0
    running = 0
    for d in degrees:
        total += running * d
        running += d
    return total


def sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


# --------------------------------------------------------------------------
# necklaces


@dataclass(frozen=True, order=True)
class Necklace:
    spine: int
    joints: tuple[int, ...]

    def __post_init__(self):
        p, T = self.spine, self.joints
        if p < 0:
            raise ValueError(f"negative spine length {p}")
        if not T or T[0] != 0 or T[-1] != p:
            raise ValueError(f"joints {T} must contain 0 and {p}")
        if any(a >= b for a, b in zip(T, T[1:])):
            raise ValueError(f"joints {T} not strictly increasing")

    # constructors

    @classmethod
    def simplex(cls, n: int) -> "Necklace":
        return cls(n, (0, n) if n else (0,))

    @classmethod
    def from_beads(cls, beads: Sequence[int]) -> "Necklace":
        joints = [0]
        for n in beads:
            if n < 1:
                raise ValueError(f"bead lengths must be positive, got {list(beads)}")
            joints.append(joints[-1] + n)
        return cls(joints[-1], tuple(joints))

    @classmethod
    def parse(cls, text: str) -> "Necklace":
        """Parse the comma separated bead encoding; '' is Delta^0."""
        text = text.strip()
        if not text:
            return cls(0, (0,))
        try:
            beads = [int(s) for s in text.split(",")]
        except ValueError:
            raise ValueError(f"bad necklace encoding {text!r}") from None
        return cls.from_beads(beads)

    def encode(self) -> str:
        return ",".join(str(n) for n in self.beads)

    def __str__(self):
        if not self.beads:
            return "D0"
        return "v".join(f"D{n}" for n in self.beads)

    # statistics

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.spine, self.joints))
            object.__setattr__(self, "_hash", h)
        return h

    @cached_property
    def beads(self) -> tuple[int, ...]:
        T = self.joints
        return tuple(b - a for a, b in zip(T, T[1:]))

    @property
    def length(self) -> int:
        """Bead length l(T)."""
        return len(self.joints) - 1

    @property
    def dim(self) -> int:
        return self.spine - self.length

    @cached_property
    def signature(self) -> int:
        return eps_g(*self.beads)

    def interior(self) -> tuple[int, ...]:
        """Vertices that are not joints, in increasing order (T^c)."""
        J = set(self.joints)
        return tuple(i for i in range(self.spine + 1) if i not in J)

    def bead_range(self, k: int) -> tuple[int, int]:
        """Vertex interval [t_{k-1}, t_k] of bead k (1-based)."""
        return self.joints[k - 1], self.joints[k]

    def before(self, k: int) -> "Necklace":
        """The necklace T^{<k} formed by beads 1..k-1."""
        return Necklace.from_beads(self.beads[: k - 1])

    def after(self, k: int) -> "Necklace":
        return Necklace.from_beads(self.beads[k:])

    def wedge(self, other: "Necklace") -> "Necklace":
        p = self.spine
        return Necklace(p + other.spine, self.joints + tuple(p + u for u in other.joints[1:]))

    __or__ = wedge


UNIT = Necklace(0, (0,))


def wedge_all(items):
    items = list(items)
    if not items:
        return UNIT
    out = items[0]
    for x in items[1:]:
        out = out | x
    return out


def signatures(T: Necklace) -> tuple[int, int, int, int]:
    """(l(T), ||T||, dim T, eps(T))."""
    return T.length, T.spine, T.dim, T.signature


@lru_cache(maxsize=None)
def necklaces_of_spine(p: int) -> tuple[Necklace, ...]:
    if p == 0:
        return (UNIT,)
    out = []
    for r in range(p):
        for inner in combinations(range(1, p), r):
            out.append(Necklace(p, (0, *inner, p)))
    return tuple(sorted(out, key=lambda T: T.joints))


def necklaces_up_to(pmax: int) -> list[Necklace]:
    return [T for p in range(pmax + 1) for T in necklaces_of_spine(p)]


# --------------------------------------------------------------------------
# maps


@dataclass(frozen=True)
class MapClass:
    inert: bool
    active: bool
    injective: bool
    surjective: bool
    spine_collapsing: bool
    bead_reducing: bool


@dataclass(frozen=True)
class NecklaceMap:
    source: Necklace
    target: Necklace
    values: tuple[int, ...]

    def __post_init__(self):
        S, T, f = self.source, self.target, self.values
        if len(f) != S.spine + 1:
            raise ValueError(f"map {f} has wrong length for {S}")
        if f[0] != 0 or f[-1] != T.spine:
            raise ValueError(f"map {f} does not preserve endpoints of [{T.spine}]")
        if any(a > b for a, b in zip(f, f[1:])):
            raise ValueError(f"map {f} is not monotone")
        image = {f[t] for t in S.joints}
        if not set(T.joints) <= image:
            raise ValueError(f"joints {T.joints} not contained in image {sorted(image)} of joints")

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.source, self.target, self.values))
            object.__setattr__(self, "_hash", h)
        return h

    def __call__(self, i: int) -> int:
        return self.values[i]

    def __str__(self):
        return f"{self.source}->{self.target}:{self.values}"

    @classmethod
    def identity(cls, T: Necklace) -> "NecklaceMap":
        return cls(T, T, tuple(range(T.spine + 1)))

    @property
    def is_injective(self) -> bool:
        f = self.values
        return all(a < b for a, b in zip(f, f[1:]))

    @property
    def is_surjective(self) -> bool:
        return set(self.values) == set(range(self.target.spine + 1))

    @property
    def is_inert(self) -> bool:
        return self.source.spine == self.target.spine and self.is_injective

    @property
    def is_active(self) -> bool:
        return tuple(sorted({self.values[t] for t in self.source.joints})) == self.target.joints

    @property
    def is_identity(self) -> bool:
        return self.source == self.target and self.values == tuple(range(self.source.spine + 1))

    def bead_factors(self) -> list["NecklaceMap"]:
        """Write an active map as a wedge f_1 v ... v f_k over the source beads."""
        if not self.is_active:
            raise ValueError(f"{self} is not active")
        out = []
        for a, b in zip(self.source.joints, self.source.joints[1:]):
            base = self.values[a]
            vals = tuple(v - base for v in self.values[a : b + 1])
            out.append(NecklaceMap(Necklace.simplex(b - a), Necklace.simplex(vals[-1]), vals))
        return out

    def classify(self) -> MapClass:
        inert = self.is_inert
        active = self.is_active
        inj = self.is_injective
        surj = self.is_surjective
        collapsing = reducing = False
        if active and surj:
            factors = self.bead_factors()
            collapsing = all(
                e.is_identity or (e.source.spine == 1 and e.target.spine == 0) for e in factors
            )
            reducing = all(e.target.spine >= 1 for e in factors)
        return MapClass(inert, active, inj, surj, collapsing, reducing)

    def wedge(self, other: "NecklaceMap") -> "NecklaceMap":
        q = self.target.spine
        vals = self.values + tuple(q + v for v in other.values[1:])
        return NecklaceMap(self.source | other.source, self.target | other.target, vals)

    __or__ = wedge

    def __matmul__(self, other: "NecklaceMap") -> "NecklaceMap":
        return compose(self, other)


@lru_cache(maxsize=None)
def compose(f: NecklaceMap, g: NecklaceMap) -> NecklaceMap:
    """f o g."""
    if g.target != f.source:
        raise ValueError(f"cannot compose {f} after {g}")
    return NecklaceMap(g.source, f.target, tuple(f.values[v] for v in g.values))


def wedge(a, b):
    return a | b


def identity(T: Necklace) -> NecklaceMap:
    return NecklaceMap.identity(T)


# named maps


@lru_cache(maxsize=None)
def delta(n: int, j: int) -> NecklaceMap:
    """Coface delta_j: Delta^{n-1} -> Delta^n skipping vertex j."""
    if not 0 <= j <= n:
        raise ValueError(f"face index {j} out of range for n={n}")
    vals = tuple(i if i < j else i + 1 for i in range(n))
    return NecklaceMap(Necklace.simplex(n - 1), Necklace.simplex(n), vals)


def sigma(n: int, i: int) -> NecklaceMap:
    """Codegeneracy sigma_i: Delta^{n+1} -> Delta^n hitting i twice."""
    if not 0 <= i <= n:
        raise ValueError(f"degeneracy index {i} out of range for n={n}")
    vals = tuple(v if v <= i else v - 1 for v in range(n + 2))
    return NecklaceMap(Necklace.simplex(n + 1), Necklace.simplex(n), vals)


def nu(*parts: int) -> NecklaceMap:
    """The inert inclusion Delta^{p_1} v ... v Delta^{p_r} -> Delta^{p_1 + ... + p_r}."""
    S = Necklace.from_beads(parts)
    return NecklaceMap(S, Necklace.simplex(S.spine), tuple(range(S.spine + 1)))


def inert(source: Necklace, target: Necklace) -> NecklaceMap:
    return NecklaceMap(source, target, tuple(range(source.spine + 1)))


# --------------------------------------------------------------------------
# factorizations


@lru_cache(maxsize=None)
def factor_epi_mono(f: NecklaceMap) -> tuple[NecklaceMap, NecklaceMap]:
    """f = m o e with e active surjective and m injective."""
    image = sorted(set(f.values))
    pos = {v: i for i, v in enumerate(image)}
    e_vals = tuple(pos[v] for v in f.values)
    middle = Necklace(len(image) - 1, tuple(sorted({e_vals[t] for t in f.source.joints})))
    e = NecklaceMap(f.source, middle, e_vals)
    m = NecklaceMap(middle, f.target, tuple(image))
    return e, m


def factor_active_inert(f: NecklaceMap) -> tuple[NecklaceMap, NecklaceMap]:
    """f = f_inert o f_act with f_act active and f_inert inert."""
    q = f.target.spine
    middle = Necklace(q, tuple(sorted({f.values[t] for t in f.source.joints})))
    act = NecklaceMap(f.source, middle, f.values)
    return act, inert(middle, f.target)


def split_injective(g: NecklaceMap, left: Necklace, right: Necklace) -> tuple[NecklaceMap, NecklaceMap]:
    """Unique g = g_1 v g_2 for injective g into left v right."""
    if g.target != left | right:
        raise ValueError(f"{g} does not land in {left} v {right}")
    if not g.is_injective:
        raise ValueError(f"{g} is not injective")
    p = left.spine
    cut = g.values.index(p)
    U = g.source
    U1 = Necklace(cut, tuple(t for t in U.joints if t <= cut))
    U2 = Necklace(U.spine - cut, tuple(t - cut for t in U.joints if t >= cut))
    g1 = NecklaceMap(U1, left, g.values[: cut + 1])
    g2 = NecklaceMap(U2, right, tuple(v - p for v in g.values[cut:]))
    return g1, g2


def split_inert(mu: NecklaceMap) -> list[NecklaceMap]:
    """Write an inert map T -> S as mu_1 v ... v mu_l over the beads of S."""
    if not mu.is_inert:
        raise ValueError(f"{mu} is not inert")
    S, T = mu.target, mu.source
    out = []
    for a, b in zip(S.joints, S.joints[1:]):
        Ti = Necklace(b - a, tuple(t - a for t in T.joints if a <= t <= b))
        out.append(inert(Ti, Necklace.simplex(b - a)))
    return out


@lru_cache(maxsize=None)
def compose_at(g: NecklaceMap, k: int, f: NecklaceMap) -> NecklaceMap:
    """g o_k f = g o (id v f v id) with f landing in bead k of source(g)."""
    U = g.source
    if not 1 <= k <= U.length:
        raise ValueError(f"bead index {k} out of range for {U}")
    a, b = U.bead_range(k)
    if f.target != Necklace.simplex(b - a):
        raise ValueError(f"{f} does not land in bead {k} of {U}")
    vals = tuple(range(a)) + tuple(a + v for v in f.values) + tuple(range(b + 1, U.spine + 1))
    joints = tuple(t for t in U.joints if t < a) + tuple(a + t for t in f.source.joints)
    joints += tuple(t - (b - a) + f.source.spine for t in U.joints if t > b)
    src = Necklace(len(vals) - 1, joints)
    return compose(g, NecklaceMap(src, U, vals))


# --------------------------------------------------------------------------
# enumeration


def maps_between(S: Necklace, T: Necklace) -> list[NecklaceMap]:
    """All necklace maps S -> T."""
    p, q = S.spine, T.spine
    if p == 0:
        return [NecklaceMap(S, T, (0,))] if q == 0 else []
    out = []
    need = set(T.joints)
    for mid in combinations_with_replacement(range(q + 1), p - 1):
        vals = (0, *mid, q)
        if need <= {vals[t] for t in S.joints}:
            out.append(NecklaceMap(S, T, vals))
    return out


def _inj_key(g: NecklaceMap):
    return (g.source.spine, g.values, g.source.joints)


@lru_cache(maxsize=None)
def enumerate_injective_into(T: Necklace) -> tuple[NecklaceMap, ...]:
    """All injective g: U -> T, ordered by (spine of U, map, joints of U)."""
    P = T.spine
    if P == 0:
        return (NecklaceMap(UNIT, T, (0,)),)
    free = [i for i in range(P + 1) if i not in set(T.joints)]
    out = []
    for r in range(len(free) + 1):
        for extra in combinations(free, r):
            image = sorted(set(T.joints) | set(extra))
            # joints of U: preimage of a set J with T.joints <= J <= image
            optional = [i for i, v in enumerate(image) if v not in set(T.joints)]
            forced = [i for i, v in enumerate(image) if v in set(T.joints)]
            for s in range(len(optional) + 1):
                for chosen in combinations(optional, s):
                    joints = tuple(sorted(forced + list(chosen)))
                    U = Necklace(len(image) - 1, joints)
                    out.append(NecklaceMap(U, T, tuple(image)))
    out.sort(key=_inj_key)
    return tuple(out)


@lru_cache(maxsize=None)
def enumerate_inert_into(n: int) -> tuple[NecklaceMap, ...]:
    """Inert maps S -> Delta^n, one per subset of interior vertices."""
    if n < 1:
        raise ValueError("n must be positive")
    target = Necklace.simplex(n)
    out = []
    for r in range(n):
        for inner in combinations(range(1, n), r):
            out.append(inert(Necklace(n, (0, *inner, n)), target))
    return tuple(out)


def enumerate_inert_into_necklace(S: Necklace) -> list[NecklaceMap]:
    free = S.interior()
    out = []
    for r in range(len(free) + 1):
        for extra in combinations(free, r):
            out.append(inert(Necklace(S.spine, tuple(sorted(S.joints + extra))), S))
    return out


# --------------------------------------------------------------------------
# signatures of inert maps


def phi(mu: NecklaceMap) -> int:
    """sum_{i<j} dim(T_i)(l(T_j) - 1) for the bead decomposition of inert mu."""
    parts = [m.source for m in split_inert(mu)]
    total = 0
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            total += parts[i].dim * (parts[j].length - 1)
    return total


def phi_k(nu_map: NecklaceMap, k: int, ambient: Necklace) -> int:
    """phi of id v ... v nu v ... v id with nu in bead k of ambient."""
    if not nu_map.is_inert:
        raise ValueError(f"{nu_map} is not inert")
    if nu_map.target != Necklace.simplex(ambient.beads[k - 1]):
        raise ValueError(f"{nu_map} does not land in bead {k} of {ambient}")
    return ambient.before(k).dim * (nu_map.source.length - 1)


def iter_compositions(total: int, parts: int | None = None) -> Iterator[tuple[int, ...]]:
    """Ordered tuples of positive integers summing to total."""
    if total == 0:
        if not parts:
            yield ()
        return
    if parts is None:
        for r in range(1, total + 1):
            yield from iter_compositions(total, r)
        return
    if parts == 0:
        return
    for cuts in combinations(range(1, total), parts - 1):
        bounds = (0, *cuts, total)
        yield tuple(b - a for a, b in zip(bounds, bounds[1:]))
