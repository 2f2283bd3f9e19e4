"""Dense GF(2) linear algebra with solvability certificates."""

from __future__ import annotations

import numpy as np


def solve_or_certify(a: np.ndarray, b: np.ndarray):
    """Solve a @ w = b over GF(2).

    Returns (solution, None) when consistent, else (None, certificate) where
    the certificate y is a 0/1 vector over equations with y @ a = 0 and
    y @ b = 1: an odd-looking combination proving unsolvability.
    """
    a = np.asarray(a, dtype=np.uint8) % 2
    b = np.asarray(b, dtype=np.uint8) % 2
    ne, nv = a.shape
    if b.shape != (ne,):
        raise ValueError("rhs length mismatch")
    m = np.concatenate([a, b.reshape(-1, 1), np.eye(ne, dtype=np.uint8)], axis=1)
    row = 0
    pivots: list[tuple[int, int]] = []
    for col in range(nv):
        hits = np.nonzero(m[row:, col])[0]
        if hits.size == 0:
            continue
        piv = row + int(hits[0])
        if piv != row:
            m[[row, piv]] = m[[piv, row]]
        mask = m[:, col].astype(bool)
        mask[row] = False
        m[mask] ^= m[row]
        pivots.append((row, col))
        row += 1
        if row == ne:
            break
    for r in range(row, ne):
        if m[r, nv]:
            return None, m[r, nv + 1 :].copy()
    sol = np.zeros(nv, dtype=np.uint8)
    for r, c in pivots:
        sol[c] = m[r, nv]
    return sol, None


def verify_certificate(a: np.ndarray, b: np.ndarray, y: np.ndarray) -> bool:
    a = np.asarray(a, dtype=np.uint8) % 2
    b = np.asarray(b, dtype=np.uint8) % 2
    y = np.asarray(y, dtype=np.uint8) % 2
    return not (y @ a % 2).any() and int(y @ b % 2) == 1
