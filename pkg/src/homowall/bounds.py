"""Grid-size bound functions of the homogenisation pipeline.

Every function returns an exact integer. ``printed_polynomial`` evaluates the
expanded closed-form polynomial; ``bound_main`` is the composition of the
stage bounds and is the one the pipeline relies on.
"""

from __future__ import annotations


def _nonneg(**kw: int) -> None:
    for name, val in kw.items():
        if val < 0:
            raise ValueError(f"{name} must be non-negative, got {val}")


def r_hat(q: int, r: int) -> int:
    """Strip supply needed so that ``r`` tile witnesses survive every color round."""
    _nonneg(q=q, r=r)
    return r * (r - 1) + (q + 1) * r


def bound_lemma31(q: int, r: int, p: int, b: int, x: int) -> int:
    """Minimum extent for the initial strip packing of Sort/Trim."""
    _nonneg(q=q, r=r, p=p, b=b)
    if x < 1:
        raise ValueError(f"x must be at least 1, got {x}")
    return (q * (r - 1) + x) * (2 * (q + 1) * p + b)


def strip_breadth(q: int, p: int, b: int) -> int:
    return 2 * (q + 1) * p + b


def bound_lemma32(q: int, r: int, p: int, b: int) -> int:
    _nonneg(q=q, r=r, p=p, b=b)
    return (q * (r + 1) + 2 * q + 1) * strip_breadth(q, p, b)


def bound_lemma33(q: int, p: int, b: int, r: int) -> int:
    _nonneg(q=q, p=p, b=b, r=r)
    return (q * (r_hat(q, r) + 1) + 2 * q + 1) * strip_breadth(q, p, b)


def rainbow_parameters(n: int, m: int, q: int) -> tuple[int, int, int]:
    """``(p, b, r)`` used by the rainbow construction for an ``n x m`` target."""
    if n % 2:
        raise ValueError(f"n must be even, got {n}")
    if n < 2 or m < 2:
        raise ValueError("n and m must be at least 2")
    _nonneg(q=q)
    return max(n // 2 + m, 2 * m), 2, q * (m - 2) + 1


def bound_rainbow(n: int, m: int, q: int) -> int:
    p, b, r = rainbow_parameters(n, m, q)
    return bound_lemma33(q, p, b, r)


def bound_uniform(ell: int, q: int) -> int:
    if ell < 2:
        raise ValueError(f"ell must be at least 2, got {ell}")
    return bound_rainbow(2 * ell, ell * ell - ell, q)


def bound_main(q: int, k: int) -> int:
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    return bound_uniform(6 * k, q)


def printed_polynomial(q: int, k: int) -> int:
    """The expanded closed-form polynomial for ``bound_main``, term by term."""
    _nonneg(q=q)
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    return (
        186624 * k**6 * q**4 + 186624 * k**6 * q**3 - 93312 * k**5 * q**4 - 93312 * k**5 * q**3
        + 12960 * k**4 * q**3 + 10368 * k**4 * q**2 + 4320 * k**3 * q**4 - 3456 * k**3 * q**2
        - 144 * k**2 * q**4 - 432 * k**2 * q**3 + 432 * k**2 * q**2 + 576 * k**2 * q + 144 * k**2
        - 48 * k * q**4 + 60 * k * q**3 - 24 * k * q**2 - 96 * k * q - 24 * k
        + 4 * q**3 - 6 * q**2 + 6 * q + 2
    )


def printed_gap(q: int, k: int) -> int:
    """The difference ``bound_main - printed_polynomial`` predicted in closed form."""
    return q * (24 * k * (q + 1) * (6 * k - 1) + 2)
