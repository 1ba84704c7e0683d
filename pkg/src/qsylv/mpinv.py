"""Moore-Penrose inverses of quaternion matrices, by two independent routes.

- :func:`mp_cramer` evaluates the determinantal (Cramer-style) entrywise
  formulas: each entry of the inverse is a bordered minor sum of a Gram matrix
  divided by the sum of its rank-sized principal minors.
- :func:`mp_oracle` works through the complex embedding and an SVD-based
  complex pseudoinverse.

Both satisfy the four Penrose identities; tests cross-verify them against
each other.  The determinantal orthogonal projectors ``P = pinv(A) A`` and
``Q = A pinv(A)`` are also available entrywise (:func:`proj_p_cramer`,
:func:`proj_q_cramer`) so that Cramer-route solvers never have to multiply a
pseudoinverse into their main path.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import InvalidSize
from .qmatrix import QMatrix, complex_embed, complex_unembed, ctranspose, mmul, rank
from .quaternion import Quaternion
from .rcdet import bordered_cdet_sum, bordered_rdet_sum, principal_minor_sum
from .svd import complex_pinv


@dataclass(frozen=True, slots=True)
class MpResult:
    """A pseudoinverse together with how it was obtained."""

    pinv: QMatrix
    method: str  # "cramer_left" | "cramer_right" | "oracle"
    rank_used: int


def hermitize(g: QMatrix) -> QMatrix:
    """Average ``g`` with its conjugate transpose.

    Gram matrices assembled in floating point can miss exact Hermitian
    symmetry in the last bit; averaging restores it without changing the
    value beyond rounding.
    """
    return (g + g.H) / 2.0


def gram_left(a: QMatrix) -> QMatrix:
    """The ``cols x cols`` Gram matrix ``ctranspose(a) @ a``, symmetrized."""
    return hermitize(mmul(ctranspose(a), a))


def gram_right(a: QMatrix) -> QMatrix:
    """The ``rows x rows`` Gram matrix ``a @ ctranspose(a)``, symmetrized."""
    return hermitize(mmul(a, ctranspose(a)))


def mp_cramer(a: QMatrix, side: Optional[str] = None, rank_floor: float = 0.0) -> MpResult:
    """Determinantal Moore-Penrose inverse.

    ``side`` picks which Gram matrix the bordered sums run over: ``"left"``
    uses ``ctranspose(a) @ a`` and column-determinant sums, ``"right"`` uses
    ``a @ ctranspose(a)`` and row-determinant sums.  Both give the same
    inverse; by default the smaller Gram matrix is chosen.
    """
    if side is None:
        side = "left" if a.cols <= a.rows else "right"
    if side not in ("left", "right"):
        raise InvalidSize(f"side must be 'left' or 'right', got {side!r}")
    r = rank(a, floor=rank_floor)
    if r == 0:
        return MpResult(QMatrix.zeros(a.cols, a.rows), f"cramer_{side}", 0)
    astar = ctranspose(a)
    if side == "left":
        g = gram_left(a)
        denom = principal_minor_sum(g, r)

        def entry(i: int, j: int) -> Quaternion:
            d = astar.col(j)
            return bordered_cdet_sum(g, i + 1, d, r) / denom

    else:
        g = gram_right(a)
        denom = principal_minor_sum(g, r)

        def entry(i: int, j: int) -> Quaternion:
            d = astar.row(i)
            return bordered_rdet_sum(g, j + 1, d, r) / denom

    pinv = QMatrix.build(a.cols, a.rows, entry)
    return MpResult(pinv, f"cramer_{side}", r)


def mp_oracle(a: QMatrix, rank_floor: float = 0.0) -> MpResult:
    """Moore-Penrose inverse through the complex embedding and an SVD."""
    r = rank(a, floor=rank_floor)
    embedded = complex_embed(a)
    pinv_embedded = complex_pinv(embedded, floor=rank_floor)
    pinv = complex_unembed(pinv_embedded, a.cols, a.rows)
    return MpResult(pinv, "oracle", r)


def mp(a: QMatrix, method: str = "oracle", side: Optional[str] = None) -> MpResult:
    """Dispatch helper: ``method`` is ``"oracle"`` or ``"cramer"``."""
    if method == "oracle":
        return mp_oracle(a)
    if method == "cramer":
        return mp_cramer(a, side=side)
    raise InvalidSize(f"method must be 'oracle' or 'cramer', got {method!r}")


# -- orthogonal projectors -----------------------------------------------------


def proj_p(a: QMatrix, method: str = "oracle") -> QMatrix:
    """``pinv(a) @ a``: orthogonal projector onto the row space (cols x cols)."""
    if method == "cramer":
        return proj_p_cramer(a)
    return mmul(mp_oracle(a).pinv, a)


def proj_q(a: QMatrix, method: str = "oracle") -> QMatrix:
    """``a @ pinv(a)``: orthogonal projector onto the column space (rows x rows)."""
    if method == "cramer":
        return proj_q_cramer(a)
    return mmul(a, mp_oracle(a).pinv)


def proj_l(a: QMatrix, method: str = "oracle") -> QMatrix:
    """``I - pinv(a) @ a``: projector onto the null space of ``a``."""
    return QMatrix.identity(a.cols) - proj_p(a, method)


def proj_r(a: QMatrix, method: str = "oracle") -> QMatrix:
    """``I - a @ pinv(a)``: projector onto the left null space of ``a``."""
    return QMatrix.identity(a.rows) - proj_q(a, method)


def proj_p_cramer(a: QMatrix, r: Optional[int] = None) -> QMatrix:
    """Entrywise determinantal form of ``pinv(a) @ a``.

    ``r`` overrides the rank decision (callers that share one rank across
    several routes pass it explicitly).
    """
    r = rank(a) if r is None else r
    if r == 0:
        return QMatrix.zeros(a.cols, a.cols)
    g = gram_left(a)
    denom = principal_minor_sum(g, r)

    def entry(i: int, j: int) -> Quaternion:
        return bordered_cdet_sum(g, i + 1, g.col(j), r) / denom

    return QMatrix.build(a.cols, a.cols, entry)


def proj_q_cramer(a: QMatrix, r: Optional[int] = None) -> QMatrix:
    """Entrywise determinantal form of ``a @ pinv(a)``."""
    r = rank(a) if r is None else r
    if r == 0:
        return QMatrix.zeros(a.rows, a.rows)
    g = gram_right(a)
    denom = principal_minor_sum(g, r)

    def entry(i: int, j: int) -> Quaternion:
        return bordered_rdet_sum(g, j + 1, g.row(i), r) / denom

    return QMatrix.build(a.rows, a.rows, entry)


def penrose_residuals(a: QMatrix, x: QMatrix) -> tuple[float, float, float, float]:
    """Frobenius norms of the four Penrose identity residuals for ``x ~ pinv(a)``."""
    axa = mmul(mmul(a, x), a)
    xax = mmul(mmul(x, a), x)
    ax = mmul(a, x)
    xa = mmul(x, a)
    return (
        (axa - a).fro_norm(),
        (xax - x).fro_norm(),
        (ax - ctranspose(ax)).fro_norm(),
        (xa - ctranspose(xa)).fro_norm(),
    )
