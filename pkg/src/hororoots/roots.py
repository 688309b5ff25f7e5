"""Root data of connected reductive groups.

Realization: the character lattice of ``G = G_ss x torus`` with ``G_ss`` simply
connected, in the basis of fundamental weights followed by the torus
coordinates. In this basis the dual root of the i-th simple root is the i-th
coordinate functional, so dominance is coordinatewise nonnegativity on the
semisimple part, and the simple root ``alpha_j`` is row ``j`` of the Cartan
matrix (``cartan[j][i] = <alpha_j, alpha_i^vee>``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from . import lattice as lt
from .lattice import Vector

_EXCEPTIONAL = {
    ("E", 6): [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)],
    ("E", 7): [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 4)],
    ("E", 8): [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)],
}

POSITIVE_ROOT_COUNT: dict[str, Callable[[int], int]] = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
    "F": lambda n: 24,
    "G": lambda n: 6,
}


class UnknownTypeError(ValueError):
    pass


def cartan_matrix(kind: str, n: int) -> list[list[int]]:
    """Cartan matrix with entries ``<alpha_i, alpha_j^vee>`` in Bourbaki numbering."""
    c = [[2 * (i == j) for j in range(n)] for i in range(n)]
    if kind == "A" and n >= 1:
        for i in range(n - 1):
            c[i][i + 1] = c[i + 1][i] = -1
    elif kind == "B" and n >= 2:
        for i in range(n - 1):
            c[i][i + 1] = c[i + 1][i] = -1
        c[n - 2][n - 1] = -2  # alpha_n short
    elif kind == "C" and n >= 2:
        for i in range(n - 1):
            c[i][i + 1] = c[i + 1][i] = -1
        c[n - 1][n - 2] = -2  # alpha_n long
    elif kind == "D" and n >= 3:
        for i in range(n - 2):
            c[i][i + 1] = c[i + 1][i] = -1
        c[n - 3][n - 1] = c[n - 1][n - 3] = -1
    elif (kind, n) in _EXCEPTIONAL:
        for a, b in _EXCEPTIONAL[(kind, n)]:
            c[a - 1][b - 1] = c[b - 1][a - 1] = -1
    elif kind == "F" and n == 4:
        c = [[2, -1, 0, 0], [-1, 2, -2, 0], [0, -1, 2, -1], [0, 0, -1, 2]]
    elif kind == "G" and n == 2:
        c = [[2, -1], [-3, 2]]
    else:
        raise UnknownTypeError(f"unknown Cartan type {kind}{n}")
    return c


@dataclass(frozen=True)
class RootDatum:
    type_label: str
    factors: tuple[tuple[str, int], ...]
    torus_rank: int
    cartan: tuple[tuple[int, ...], ...]
    simple_roots: tuple[Vector, ...]
    coroots: tuple[Vector, ...]

    @property
    def character_rank(self) -> int:
        return len(self.cartan) + self.torus_rank

    @property
    def semisimple_rank(self) -> int:
        return len(self.simple_roots)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(f"a{i + 1}" for i in range(self.semisimple_rank))

    def index(self, label) -> int:
        """Simple-root index from an int or a label like ``"a2"``."""
        if isinstance(label, int):
            i = label
        else:
            m = re.fullmatch(r"a(\d+)", str(label).strip().lower())
            if not m:
                raise ValueError(f"bad simple root label {label!r}")
            i = int(m.group(1)) - 1
        if not 0 <= i < self.semisimple_rank:
            raise ValueError(f"simple root {label!r} out of range")
        return i

    def to_json(self) -> dict:
        return {"type": "+".join(f"{k}{n}" for k, n in self.factors) or "", "torus_rank": self.torus_rank}


_FACTOR = re.compile(r"([A-G])(\d+)")


def build_root_datum(spec: str, torus_rank: int | None = None) -> RootDatum:
    """Parse strings like ``"A2 + torus 1"``, ``"A1xA1"``, ``"torus 2"``, ``"B2"``."""
    text = spec.replace(" ", "")
    factors: list[tuple[str, int]] = []
    torus = 0
    for part in re.split(r"[+x×]", text) if text else []:
        if not part:
            continue
        m = re.fullmatch(r"(?:torus|T)(\d+)", part, flags=re.IGNORECASE)
        if m:
            torus += int(m.group(1))
            continue
        m = _FACTOR.fullmatch(part)
        if not m:
            raise UnknownTypeError(f"cannot parse type component {part!r}")
        factors.append((m.group(1), int(m.group(2))))
    if torus_rank is not None:
        torus += torus_rank
    blocks = [cartan_matrix(k, n) for k, n in factors]
    size = sum(len(b) for b in blocks)
    cartan = [[0] * size for _ in range(size)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            cartan[off + i][off:off + len(b)] = row
        off += len(b)
    total = size + torus
    simple = tuple(tuple(cartan[j]) + (0,) * torus for j in range(size))
    coroots = tuple(tuple(int(i == j) for j in range(total)) for i in range(size))
    label = " + ".join([f"{k}{n}" for k, n in factors] + [f"torus {torus}"])
    return RootDatum(label, tuple(factors), torus, tuple(map(tuple, cartan)), simple, coroots)


def is_dominant(rd: RootDatum, mu: Sequence[int]) -> bool:
    if len(mu) != rd.character_rank:
        raise lt.DimensionError(f"weight of rank {len(mu)} for character lattice of rank {rd.character_rank}")
    return all(lt.pair(a, mu) >= 0 for a in rd.coroots)


def _to_weight(rd: RootDatum, coeffs: Sequence[int]) -> Vector:
    out = [0] * rd.character_rank
    for c, a in zip(coeffs, rd.simple_roots):
        if c:
            out = [x + c * y for x, y in zip(out, a)]
    return tuple(out)


def positive_roots_simple_coords(rd: RootDatum) -> list[Vector]:
    """Positive roots as coefficient vectors over the simple roots.

    Built height by height with root strings: for a root ``beta`` and a simple
    root ``alpha_i``, ``beta + alpha_i`` is a root iff ``p - <beta, alpha_i^vee> > 0``
    where ``p`` is how far the string extends downwards.
    """
    n = rd.semisimple_rank
    unit = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    roots = set(unit)
    level = list(unit)
    while level:
        nxt = set()
        for beta in level:
            for i in range(n):
                p = 0
                down = list(beta)
                while True:
                    down[i] -= 1
                    if tuple(down) in roots:
                        p += 1
                    else:
                        break
                pairing = sum(beta[j] * rd.cartan[j][i] for j in range(n))
                if p - pairing > 0:
                    up = list(beta)
                    up[i] += 1
                    nxt.add(tuple(up))
        nxt -= roots
        roots |= nxt
        level = sorted(nxt)
    return sorted(roots, key=lambda c: (sum(c), c))


def positive_roots(rd: RootDatum) -> list[Vector]:
    return [_to_weight(rd, c) for c in positive_roots_simple_coords(rd)]


@dataclass(frozen=True)
class ParabolicData:
    root_datum: RootDatum
    levi: tuple[int, ...]
    omega: tuple[Vector, ...]
    omega_simple_coords: tuple[Vector, ...]


def parabolic_omega(rd: RootDatum, levi: Iterable) -> ParabolicData:
    """Highest weights of the nilradical as a Levi module.

    ``Omega`` consists of the positive roots outside the Levi subsystem that stay
    outside the root system after adding any Levi simple root.
    """
    idx = tuple(sorted({rd.index(l) for l in levi}))
    pos = positive_roots_simple_coords(rd)
    allroots = set(pos) | {tuple(-x for x in c) for c in pos}
    in_levi = lambda c: all(c[j] == 0 for j in range(rd.semisimple_rank) if j not in idx)
    omega = []
    for beta in pos:
        if in_levi(beta):
            continue
        if any(tuple(b + int(j == i) for j, b in enumerate(beta)) in allroots for i in idx):
            continue
        omega.append(beta)
    return ParabolicData(rd, idx, tuple(_to_weight(rd, c) for c in omega), tuple(omega))


def omega_mu(pd: ParabolicData, mu: Sequence[int], m_basis: Sequence[Sequence[int]],
             in_gamma: Callable[[Vector], bool]) -> tuple[list[Vector], list[Vector]]:
    """``Omega_mu`` (``mu - alpha`` in M) and ``Omega_mu^0`` (additionally in the monoid).

    ``in_gamma`` receives ``mu - alpha`` in coordinates of ``m_basis``.
    """
    mu = tuple(mu)
    if len(mu) != pd.root_datum.character_rank:
        raise lt.DimensionError("weight rank does not match the character lattice")
    full: list[Vector] = []
    zero: list[Vector] = []
    for alpha in pd.omega:
        diff = lt.sub(mu, alpha)
        coords = lt.solve_integer(m_basis, diff)
        if coords is None:
            continue
        full.append(alpha)
        if in_gamma(coords):
            zero.append(alpha)
    return full, zero
