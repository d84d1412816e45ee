"""
Dense symmetric eigenvalues and the special functions used by the
closed-form oracles (modified Bessel I0/I1, Lambert W).
"""

import logging
import math
import time
from typing import Optional, Tuple

import numpy as np
import scipy.linalg
from scipy import special

from .conf import get_setting
from .exceptions import DomainError, NumericError, ResourceError
from .schemas import Spectrum, SymMatrix

logger = logging.getLogger(__name__)

QL_MAX_ITERATIONS = 60
BRANCH_POINT = -math.exp(-1.0)


def householder_tridiagonal(a: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Reduce a symmetric matrix to tridiagonal form T = P^T a P.

    Returns the diagonal and the super-diagonal of T; `a` is not modified.
    """
    a = np.array(a, dtype=np.float64)
    n = a.shape[0]
    for k in range(n - 2):
        u = a[k + 1:n, k].copy()
        u_mag = math.sqrt(np.dot(u, u))
        if u_mag == 0.0:
            continue
        if u[0] < 0.0:
            u_mag = -u_mag
        u[0] += u_mag
        h = np.dot(u, u) / 2.0
        v = np.dot(a[k + 1:n, k + 1:n], u) / h
        g = np.dot(u, v) / (2.0 * h)
        v = v - g * u
        a[k + 1:n, k + 1:n] -= np.outer(v, u) + np.outer(u, v)
        a[k, k + 1] = -u_mag
    return np.diagonal(a).copy(), np.diagonal(a, 1).copy()


def tridiagonal_ql_eigenvalues(diagonal: np.ndarray, off_diagonal: np.ndarray, tol: float) -> np.ndarray:
    """
    Eigenvalues of a symmetric tridiagonal matrix by implicit QL with a
    Wilkinson-type shift. Returns them in ascending order.
    """
    d = [float(x) for x in diagonal]
    n = len(d)
    e = [float(x) for x in off_diagonal] + [0.0]
    if n == 0:
        return np.empty(0)
    anorm = max(abs(d[i]) + abs(e[i]) for i in range(n))
    floor = np.finfo(np.float64).eps * anorm
    tol = max(tol, np.finfo(np.float64).eps)

    for l in range(n):
        iterations = 0
        while True:
            m = l
            while m + 1 < n:
                if abs(e[m]) <= tol * (abs(d[m]) + abs(d[m + 1])) or abs(e[m]) <= floor:
                    break
                m += 1
            if m == l:
                break
            if iterations >= QL_MAX_ITERATIONS:
                raise NumericError(
                    f"QL iteration did not converge for eigenvalue {l} after {QL_MAX_ITERATIONS} sweeps"
                )
            iterations += 1

            p = d[l]
            g = (d[l + 1] - p) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - p + e[l] / (g - r if g < 0 else g + r)
            s, c, p = 1.0, 1.0, 0.0
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                if abs(f) > abs(g):
                    c = g / f
                    r = math.hypot(c, 1.0)
                    e[i + 1] = f * r
                    s = 1.0 / r
                    c *= s
                else:
                    s = f / g
                    r = math.hypot(s, 1.0)
                    e[i + 1] = g * r
                    c = 1.0 / r
                    s *= c
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return np.sort(np.array(d))


def _lapack_eigenvalues(entries: np.ndarray) -> np.ndarray:
    try:
        return scipy.linalg.eigh(entries, eigvals_only=True, driver='ev', check_finite=True)
    except (np.linalg.LinAlgError, ValueError) as e:
        raise NumericError(f"LAPACK eigensolver failed: {e}") from e


def _householder_eigenvalues(entries: np.ndarray, tol: float) -> np.ndarray:
    diagonal, off_diagonal = householder_tridiagonal(entries)
    return tridiagonal_ql_eigenvalues(diagonal, off_diagonal, tol)


def eigenvalues_sym(m: SymMatrix, tol: Optional[float] = None, method: Optional[str] = None) -> Spectrum:
    """All eigenvalues of a symmetric matrix, sorted descending"""
    n = m.order
    if n == 0:
        raise DomainError("Cannot take the spectrum of an empty matrix")
    cap = get_setting('DENSE_EIGEN_CAP')
    if n > cap:
        raise ResourceError(f"Matrix order {n} exceeds the dense eigensolver cap of {cap}")
    tol = get_setting('EIGEN_TOL') if tol is None else tol
    method = method or get_setting('EIGEN_METHOD')

    started = time.perf_counter()
    if method == 'lapack':
        values = _lapack_eigenvalues(m.entries)
    elif method == 'householder':
        values = _householder_eigenvalues(m.entries, tol)
    else:
        raise DomainError(f"Unknown eigensolver method '{method}'")
    if not np.all(np.isfinite(values)):
        raise NumericError("Eigensolver returned non-finite eigenvalues")
    logger.debug(
        "%s eigenvalues of order %d via %s in %.3fs",
        m.kind.value, n, method, time.perf_counter() - started,
    )
    return Spectrum(values=values)


def _check_order(order: int) -> None:
    if order not in (0, 1):
        raise DomainError(f"Only Bessel orders 0 and 1 are supported, got {order}")


def bessel_i(order: int, x: float) -> float:
    """Modified Bessel function of the first kind I_0 or I_1 at x >= 0"""
    _check_order(order)
    if x < 0:
        raise DomainError(f"Bessel argument must be non-negative, got {x}")
    return float(special.i0(x) if order == 0 else special.i1(x))


def log_bessel_i(order: int, x: float) -> float:
    """log I_order(x) from the exponentially scaled functions, finite for large x"""
    _check_order(order)
    if x < 0:
        raise DomainError(f"Bessel argument must be non-negative, got {x}")
    if order == 1 and x == 0:
        return -math.inf
    scaled = special.i0e(x) if order == 0 else special.i1e(x)
    return float(math.log(scaled) + x)


def bessel_ratio(x: float) -> float:
    """I_1(x) / I_0(x)"""
    if x < 0:
        raise DomainError(f"Bessel argument must be non-negative, got {x}")
    return float(special.i1e(x) / special.i0e(x))


def lambert_w(branch: int, x: float) -> float:
    """Real Lambert W on branch 0 (w >= -1) or -1 (w <= -1)"""
    if branch not in (0, -1):
        raise DomainError(f"Lambert W branch must be 0 or -1, got {branch}")
    if math.isfinite(x) and math.isclose(x, BRANCH_POINT, rel_tol=1e-15):
        return -1.0
    if not math.isfinite(x) or x < BRANCH_POINT:
        raise DomainError(f"Lambert W is not real at x={x}")
    if branch == -1 and x >= 0:
        raise DomainError(f"Branch -1 needs -1/e <= x < 0, got {x}")
    w = complex(special.lambertw(x, k=branch))
    if not math.isfinite(w.real):
        raise NumericError(f"Lambert W did not converge at x={x}")
    # rounding near the branch point can cross -1
    return max(w.real, -1.0) if branch == 0 else min(w.real, -1.0)
