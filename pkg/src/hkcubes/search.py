"""Breadth-first closure of packed configurations under vertexwise moves.

Cube sets, tuple groups and the pair space of ``rp_relation`` are all orbits
of a few starting rows of symbols under moves of the same shape: apply one
permutation of the symbols at the positions selected by a mask. Rows are
packed into ``int64`` codes ``sum(row[v] * n**v)`` so that a visited set is a
sorted ``numpy`` array and one BFS level is a handful of vectorized calls.
"""

# =========================================================================== #
from typing import List, NamedTuple, Sequence

import numpy as np

# --------------------------------------------------------------------------- #
from hkcubes import util
from hkcubes.config import DEFAULT_CUBE_BUDGET
from hkcubes.errors import BudgetExceeded

logger = util.get_logger(__name__)

INT64_MAX = np.iinfo(np.int64).max
CHUNK = 1 << 20


class Move(NamedTuple):
    """Apply ``perm`` to the symbols at positions where ``mask`` is set."""

    perm: np.ndarray
    mask: np.ndarray
    label: str = ""


class Closure(NamedTuple):
    codes: np.ndarray
    levels: int
    visited: int


def symbol_dtype(n_symbols: int) -> type:
    # NOTE: One byte per vertex up to 256 symbols, two bytes after.
    if n_symbols <= 256:
        return np.uint8
    if n_symbols <= 65536:
        return np.uint16
    return np.int64


def radix(n_symbols: int, width: int, *, label: str = "encode") -> np.ndarray:
    """Place values ``n**v``; raises when codes would not fit in ``int64``."""
    if n_symbols**width - 1 > INT64_MAX:
        raise BudgetExceeded(
            label,
            detail=(
                f"{width} positions over {n_symbols} symbols do not pack into "
                "a 64 bit code."
            ),
        )
    return np.array([n_symbols**v for v in range(width)], dtype=np.int64)


def encode(rows: np.ndarray, n_symbols: int, *, label: str = "encode") -> np.ndarray:
    rows = np.atleast_2d(rows)
    return rows.astype(np.int64) @ radix(n_symbols, rows.shape[1], label=label)


def decode(codes: np.ndarray, n_symbols: int, width: int) -> np.ndarray:
    codes = np.asarray(codes, dtype=np.int64)
    powers = radix(n_symbols, width)
    rows = (codes[:, None] // powers[None, :]) % n_symbols
    return rows.astype(symbol_dtype(n_symbols))


def apply_move(rows: np.ndarray, move: Move) -> np.ndarray:
    out = rows.copy()
    out[:, move.mask] = move.perm[rows[:, move.mask]]
    return out


def contains(codes: np.ndarray, query: np.ndarray) -> np.ndarray:
    """Vectorized membership of ``query`` in the sorted array ``codes``."""
    query = np.asarray(query, dtype=np.int64)
    if not codes.size:
        return np.zeros(query.shape, dtype=bool)
    pos = np.searchsorted(codes, query)
    pos[pos == codes.size] = 0
    return codes[pos] == query


def closure(
    starts: np.ndarray,
    moves: Sequence[Move],
    n_symbols: int,
    *,
    budget: int = DEFAULT_CUBE_BUDGET,
    label: str = "closure",
) -> Closure:
    """Every row reachable from ``starts`` by repeated ``moves``.

    The result is deterministic: codes come back sorted regardless of the
    order moves are given in. Exceeding ``budget`` raises
    ``BudgetExceeded`` with the counts reached so far.
    """
    starts = np.atleast_2d(np.asarray(starts))
    width = starts.shape[1]
    powers = radix(n_symbols, width, label=label)
    dtype = symbol_dtype(n_symbols)

    frontier = np.unique(starts.astype(np.int64) @ powers)
    seen = frontier
    if seen.size > budget:
        raise BudgetExceeded(label, visited=int(seen.size), budget=budget)

    moves = [
        Move(np.asarray(m.perm, dtype=np.int64), np.asarray(m.mask, dtype=bool), m.label)
        for m in moves
    ]
    levels = 0
    while frontier.size:
        images: List[np.ndarray] = []
        for start in range(0, frontier.size, CHUNK):
            chunk = frontier[start : start + CHUNK]
            rows = ((chunk[:, None] // powers[None, :]) % n_symbols).astype(dtype)
            for move in moves:
                images.append(apply_move(rows, move).astype(np.int64) @ powers)

        if not images:
            break
        candidates = np.unique(np.concatenate(images))
        fresh = candidates[~contains(seen, candidates)]
        levels += 1
        if not fresh.size:
            break

        seen = np.union1d(seen, fresh)
        logger.debug(
            "`%s` level %s: frontier=%s visited=%s.",
            label,
            levels,
            fresh.size,
            seen.size,
        )
        if seen.size > budget:
            raise BudgetExceeded(
                label,
                visited=int(seen.size),
                frontier=int(fresh.size),
                budget=budget,
            )
        frontier = fresh

    logger.info("`%s` closed with %s states in %s levels.", label, seen.size, levels)
    seen.setflags(write=False)
    return Closure(seen, levels, int(seen.size))

