"""Named groups and systems, and the circle-rotation orientation demo.

Every system builder returns a minimal system; this is checked when the
system is built.
"""

# =========================================================================== #
import math
from functools import reduce
from typing import List, Sequence

import numpy as np

# --------------------------------------------------------------------------- #
from hkcubes import util
from hkcubes.errors import InternalInvariantViolation, InvalidParameter
from hkcubes.groups import FiniteGroup, Subgroup, generate_subgroup
from hkcubes.report import Report
from hkcubes.systems import FiniteSystem

logger = util.get_logger(__name__)


def _positive(name: str, n: int, least: int = 1) -> int:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < least:
        raise InvalidParameter(f"`{name}` must be an integer >= {least}, got `{n}`.")
    return int(n)


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % k for k in range(2, math.isqrt(p) + 1))


# --------------------------------------------------------------------------- #
# Groups


def cyclic_group(n: int) -> FiniteGroup:
    n = _positive("n", n)
    k = np.arange(n)
    return FiniteGroup(
        (k[:, None] + k[None, :]) % n,
        name=f"Z{n}",
        generators=[1 % n] if n > 1 else [],
    )


def symmetric_group(n: int) -> FiniteGroup:
    """``Sym(n)`` generated by ``(1 2)`` and ``(1 2 ... n)``."""
    n = _positive("n", n)
    identity = list(range(n))
    if n == 1:
        return FiniteGroup.from_permutations([identity], name="S1")
    swap = [1, 0] + identity[2:]
    cycle = identity[1:] + [0]
    return FiniteGroup.from_permutations([swap, cycle], name=f"S{n}")


def alternating_group(n: int) -> FiniteGroup:
    """``Alt(n)`` generated by ``(1 2 3)`` and ``(1 2 ... n)`` or
    ``(2 3 ... n)`` depending on the parity of ``n``."""
    n = _positive("n", n)
    identity = list(range(n))
    if n < 3:
        return FiniteGroup.from_permutations([identity], name=f"A{n}")
    three = [1, 2, 0] + identity[3:]
    if n % 2:
        long = identity[1:] + [0]
    else:
        long = [0] + identity[2:] + [1]
    return FiniteGroup.from_permutations([three, long], name=f"A{n}")


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the ``n``-gon; element ``k + n e`` is ``r^k s^e``."""
    n = _positive("n", n)
    k, e = np.arange(2 * n) % n, np.arange(2 * n) // n
    # r^a s^e r^b s^f = r^(a + (-1)^e b) s^(e + f)
    a, b = k[:, None], k[None, :]
    sign = np.where(e[:, None] == 1, -1, 1)
    table = (a + sign * b) % n + n * ((e[:, None] + e[None, :]) % 2)
    labels = [f"r{i}" if not j else f"r{i}s" for j in (0, 1) for i in range(n)]
    return FiniteGroup(table, labels=labels, name=f"D{n}", generators=[1 % n, n] if n > 1 else [n])


def heisenberg_group(p: int) -> FiniteGroup:
    """Unitriangular ``3 x 3`` matrices over ``Z/p``.

    ``(a, b, c)`` stands for the matrix with ``a``, ``b`` above the diagonal
    and ``c`` in the corner, indexed ``a + p b + p^2 c``; the product is
    ``(a + a', b + b', c + c' + a b')``.
    """
    p = _positive("p", p, 2)
    if not _is_prime(p):
        raise InvalidParameter(f"Heisenberg groups are built for primes, got `{p}`.")
    idx = np.arange(p**3)
    a, b, c = idx % p, (idx // p) % p, idx // p**2
    A = (a[:, None] + a[None, :]) % p
    B = (b[:, None] + b[None, :]) % p
    C = (c[:, None] + c[None, :] + a[:, None] * b[None, :]) % p
    labels = [f"({x},{y},{z})" for x, y, z in zip(a, b, c)]
    return FiniteGroup(
        A + p * B + p**2 * C, labels=labels, name=f"Heis{p}", generators=[1, p]
    )


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """``G x H`` with ``(g, h)`` at index ``g |H| + h``."""
    m = H.order
    g, h = np.arange(G.order * m) // m, np.arange(G.order * m) % m
    table = G.mult[g[:, None], g[None, :]] * m + H.mult[h[:, None], h[None, :]]
    gens = [int(x) * m + H.identity for x in G.generators] + [
        G.identity * m + int(y) for y in H.generators
    ]
    labels = [f"({G.label(int(x))},{H.label(int(y))})" for x, y in zip(g, h)]
    return FiniteGroup(
        table,
        labels=labels,
        name=f"{G.name}x{H.name}",
        generators=gens,
        max_order=max(G.order * m, 1),
    )


# --------------------------------------------------------------------------- #
# Systems


def _admit(sys: FiniteSystem) -> FiniteSystem:
    if not sys.is_minimal:
        raise InternalInvariantViolation(f"Zoo system `{sys.name}` is not minimal.")
    logger.debug("Built `%s` with %s points.", sys.name, sys.points)
    return sys


def regular(G: FiniteGroup, *, name: str | None = None) -> FiniteSystem:
    """``G`` acting on itself by left translation."""
    return _admit(FiniteSystem(G, G.mult, labels=G.labels, name=name or f"regular:{G.name}"))


def rotation(n: int) -> FiniteSystem:
    return regular(cyclic_group(n), name=f"rotation:{n}")


def coset(G: FiniteGroup, H: Subgroup | Sequence[int], *, name: str | None = None) -> FiniteSystem:
    """``G`` acting on the left cosets ``gH``, numbered by smallest member."""
    if not isinstance(H, Subgroup):
        H = generate_subgroup(G, H)
    cosets = G.mult[np.arange(G.order)[:, None], H.members[None, :]].min(axis=1)
    reps = np.unique(cosets)
    index = np.searchsorted(reps, cosets)
    action = index[G.mult[:, reps]]
    labels = [f"{G.label(int(r))}H" for r in reps]
    return _admit(
        FiniteSystem(G, action, labels=labels, name=name or f"coset:{G.name}/{H.order}")
    )


def heisenberg_mod(p: int) -> FiniteSystem:
    return regular(heisenberg_group(p), name=f"heisenberg:{p}")


def a5_regular() -> FiniteSystem:
    return regular(alternating_group(5), name="a5")


def dihedral(n: int) -> FiniteSystem:
    return regular(dihedral_group(n), name=f"dihedral:{n}")


def symmetric(n: int) -> FiniteSystem:
    """``Sym(n)`` on ``n`` letters."""
    G = symmetric_group(n)
    assert G.permutations is not None
    return _admit(
        FiniteSystem(
            G,
            G.permutations,
            labels=[str(k + 1) for k in range(n)],
            name=f"symmetric:{n}",
        )
    )


def _product_pair(X: FiniteSystem, Y: FiniteSystem) -> FiniteSystem:
    G = direct_product(X.group, Y.group)
    m, k = Y.group.order, Y.points
    g, h = np.arange(G.order) // m, np.arange(G.order) % m
    x, y = np.arange(X.points * k) // k, np.arange(X.points * k) % k
    action = X.action[g[:, None], x[None, :]] * k + Y.action[h[:, None], y[None, :]]
    labels = [f"({X.labels[i]},{Y.labels[j]})" for i, j in zip(x, y)]
    return FiniteSystem(G, action, labels=labels, name=f"{X.name}*{Y.name}")


def product_of(systems: Sequence[FiniteSystem]) -> FiniteSystem:
    """Product system of ``G_1 x ... x G_k`` on ``X_1 x ... x X_k``."""
    if not systems:
        raise InvalidParameter("Product of no systems.")
    return _admit(reduce(_product_pair, systems))


# --------------------------------------------------------------------------- #


def cyclic_orientation(a: np.ndarray, b: np.ndarray, c: np.ndarray, q: int) -> np.ndarray:
    """``+1`` when ``a, b, c`` are met in this order going round ``Z/q``,
    ``-1`` for the reverse order and ``0`` when two coincide."""
    ab, ac = (b - a) % q, (c - a) % q
    out = np.where(ab < ac, 1, -1)
    return np.where((ab == 0) | (ac == 0) | (ab == ac), 0, out)


def sturmian_orientation_demo(
    q: int, p: int, n_max: int, half: int, *, exhaustive: bool = False
) -> Report:
    """Rotations ``x -> x + n p`` of ``Z/q`` preserve cyclic order.

    ``Z/q`` stands for the circle at resolution ``1/q``. Points ``w`` just
    right of ``0`` (``0 <= w < half``) and ``y`` just left of it
    (``q - half < y < q``) keep the orientation of ``(w, y, 0)`` under every
    rotation by ``n p``, ``n <= n_max``. This is the exact fact that rules
    out glueing a configuration ``(0+, 0-, 0-, 0+)`` from the two sides of
    ``0`` in the coding of an irrational rotation. With ``exhaustive`` every
    pair of points is checked instead of the two arcs.
    """
    q, p = _positive("q", q, 4), _positive("p", p)
    n_max, half = _positive("n_max", n_max, 0), _positive("half", half)
    if math.gcd(p, q) != 1:
        raise InvalidParameter(f"Step `{p}` is not invertible modulo `{q}`.")
    if 2 * half > q:
        raise InvalidParameter(f"Windows of half width `{half}` overlap in Z/{q}.")

    if exhaustive:
        w, y = np.meshgrid(np.arange(q), np.arange(q), indexing="ij")
    else:
        w, y = np.meshgrid(np.arange(half), np.arange(q - half + 1, q), indexing="ij")
    w, y = w.ravel(), y.ravel()

    # x + n p only takes q values, so the distinct shifts cover every n.
    shifts = np.unique(np.arange(n_max + 1, dtype=np.int64) * p % q)
    before = cyclic_orientation(w, y, np.zeros_like(w), q)
    witnesses: List[dict] = []
    for s in shifts:
        after = cyclic_orientation((w + s) % q, (y + s) % q, np.full_like(w, s), q)
        for k in np.flatnonzero(after != before)[:1]:
            witnesses.append(dict(shift=int(s), w=int(w[k]), y=int(y[k])))

    return Report.from_witnesses(
        "sturmian-orientation",
        witnesses,
        states_visited=int(shifts.size * w.size),
        q=q,
        p=p,
        n_max=n_max,
        half=half,
        pairs=int(w.size),
        distinct_shifts=int(shifts.size),
        note=(
            "Rotation of Z/q preserves the cyclic order of the two arcs at 0. "
            "This demonstrates the orientation argument only; the failure of "
            "glueing in the Sturmian system is not checked at finite scale."
        ),
    )


BUILDERS = {
    "rotation": rotation,
    "heisenberg": heisenberg_mod,
    "dihedral": dihedral,
    "symmetric": symmetric,
}

GROUPS = {
    "cyclic": cyclic_group,
    "sym": symmetric_group,
    "alt": alternating_group,
    "dihedral": dihedral_group,
    "heisenberg": heisenberg_group,
}
