"""Certified summation of positive series.

Tails are bracketed by the integral test: for f positive, continuous and
decreasing on [n, inf),

    int_n^inf f  <=  sum_{i>=n} f(i)  <=  f(n) + int_n^inf f

so a partial sum up to n - 1 plus the bracket encloses the full series with
width f(n).
"""

import logging
import math
from typing import Callable, List, Optional

import numpy as np
from scipy import integrate

from .enclosure import Enclosure

logger = logging.getLogger(__name__)

Term = Callable[[np.ndarray], np.ndarray]

_EPS = float(np.finfo(float).eps)

DEFAULT_MAX_TERMS = 1 << 28
QUAD_RTOL = 1e-13
QUAD_LIMIT = 500


def partial_sum(term: Term, start: int, stop: int, chunk: int = 1 << 20) -> float:
    """Sum term(i) for start <= i < stop in chunked float64 arithmetic."""
    if stop <= start:
        return 0.0
    pieces: List[float] = []
    lo = start
    while lo < stop:
        hi = min(stop, lo + chunk)
        pieces.append(float(np.sum(term(np.arange(lo, hi, dtype=float)))))
        lo = hi
    return math.fsum(pieces)


def tail_integral(term: Term, n: float) -> Enclosure:
    """Enclosure of int_n^inf term(x) dx, widened by the quadrature error estimate.

    The substitution x = n/u maps the tail onto (0, 1], where the integrand
    term(n/u) n/u^2 stays bounded for terms decaying at least like 1/x^2.
    """

    def integrand(u: float) -> float:
        if u <= 0.0:
            return 0.0
        x = n / u
        with np.errstate(all="ignore"):
            value = float(term(np.float64(x)))
        if value == 0.0 or not math.isfinite(value):
            return 0.0
        return value * x / u

    value, abserr, info, *_ = integrate.quad(
        integrand, 0.0, 1.0, epsabs=0.0, epsrel=QUAD_RTOL, limit=QUAD_LIMIT, full_output=True
    )
    if info["last"] >= QUAD_LIMIT:
        logger.warning("tail quadrature from %g hit %d subintervals (error %.3g)",
                       n, QUAD_LIMIT, abserr)
    slack = abserr + 64 * _EPS * abs(value)
    return Enclosure(max(0.0, value - slack), value + slack)


def integral_test_bracket(
    term: Term,
    start: int,
    tol: float,
    antiderivative_tail: Optional[Callable[[float], float]] = None,
    monotone_from: Optional[int] = None,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> Enclosure:
    """Enclose sum_{i>=start} term(i) to width at most tol.

    Args:
        term: Vectorised positive term, decreasing from ``monotone_from`` on
        start: First index of the series
        tol: Target enclosure width
        antiderivative_tail: Closed form of int_n^inf term; quadrature when omitted
        monotone_from: Index from which term is decreasing (defaults to start)
        max_terms: Cap on explicitly summed terms; the bracket is returned wider
            than tol (with a warning) once reached

    Returns:
        Enclosure of the series value
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    n = max(start, monotone_from if monotone_from is not None else start)
    pieces = [partial_sum(term, start, n)]

    step = 1024
    while float(term(np.float64(n))) > tol:
        if n - start >= max_terms:
            logger.warning(
                "series bracket stopped at %d terms with width %.3g > %.3g",
                n - start, float(term(np.float64(n))), tol,
            )
            break
        pieces.append(partial_sum(term, n, n + step))
        n += step
        step = min(step * 2, 1 << 22)

    partial = math.fsum(pieces)
    if antiderivative_tail is not None:
        tail = Enclosure.point(antiderivative_tail(float(n)))
    else:
        tail = tail_integral(term, float(n))
    rounding = 64 * _EPS * abs(partial)
    head = float(term(np.float64(n)))
    return Enclosure(
        max(0.0, partial + tail.lower - rounding),
        partial + head + tail.upper + rounding,
    )


def first_index_below(term: Term, threshold: float, start: int) -> int:
    """Smallest i >= start with term(i) <= threshold, for decreasing terms (galloping search)."""
    if float(term(np.float64(start))) <= threshold:
        return start
    lo, hi = start, start + 1
    while float(term(np.float64(hi))) > threshold:
        lo, hi = hi, start + 2 * (hi - start)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if float(term(np.float64(mid))) > threshold:
            lo = mid
        else:
            hi = mid
    return hi
