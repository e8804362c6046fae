"""One-dimensional AR estimators: Levinson recursion and two Burg lattices.

Three routes to the prediction coefficients of ``x(k) + sum_l a_l x(k-l) =
w(k)``:

* :func:`levinson` solves the Toeplitz normal equations order-recursively
  from a biased autocorrelation sequence.
* :func:`burg_classic` is the textbook finite-sample Burg lattice: the
  forward/backward error supports shrink by one sample per order, and each
  reflection coefficient comes from the half-sum energy denominator (which
  keeps its magnitude at or below one).
* :func:`burg_modified` runs the same lattice over zero-padded error
  signals whose supports GROW by one sample per order (``e_b(-1) = 0`` and
  the forward error past the last nonzero value are kept as explicit
  zeros). Under that convention the lattice reproduces the Levinson
  coefficients on the biased autocorrelation exactly, so the two routes
  cross-check each other to machine precision.

All three populate a per-order history so a single run at order ``n``
yields the models of every intermediate order.
"""

from dataclasses import dataclass

import numpy as np

from .autocorr import as_signal_1d
from .errors import DegenerateSignalError, SingularityError

__all__ = [
    "ArModel1D",
    "ErrorSignals1D",
    "LatticeStage",
    "backward_prediction_residual",
    "burg_classic",
    "burg_modified",
    "levinson",
    "prediction_residual",
    "residual_mse",
]

#: |reflection| within this distance of 1 means the signal is perfectly
#: predictable at that order; the recursion stops instead of dividing by a
#: vanishing error power.
UNIT_CIRCLE_TOL = 1e-14

#: Levinson denominator floor, relative to r_0.
POWER_FLOOR_SCALE = 1e-14


@dataclass
class ErrorSignals1D:
    """Forward/backward prediction errors with an explicit support.

    ``forward[i]`` is the forward error at time ``k_min + i`` (same for
    ``backward``). Classic Burg keeps ``[order, N-1]``; the zero-padded
    variant keeps ``[0, N+order-1]``, with the boundary samples
    ``e_b(-1) = 0`` and ``e_f(N+order) = 0`` implied outside the arrays.
    """

    forward: np.ndarray
    backward: np.ndarray
    k_min: int
    k_max: int


@dataclass
class LatticeStage:
    """Snapshot after completing one recursion order."""

    order: int
    coeffs: np.ndarray
    error_power: float
    reflection: complex
    errors: ErrorSignals1D | None = None


@dataclass
class ArModel1D:
    """AR prediction coefficients ``a_1..a_order`` plus error power.

    ``error_power`` is the unnormalized prediction-error power (same scale
    as the unnormalized lag sums: ``P_0 = r_0 = sum |x|^2``). ``history``
    holds one :class:`LatticeStage` per completed order. ``early_stop`` is
    set when the recursion ended before the requested order because a
    reflection coefficient reached the unit circle.
    """

    order: int
    coeffs: np.ndarray
    error_power: float
    history: list[LatticeStage]
    early_stop: bool = False


def _extend(coeffs: np.ndarray, reflection: complex) -> np.ndarray:
    """Order-update ``a_l <- a_l + k conj(a_{n-l})``, appending ``a_n = k``."""
    return np.concatenate([coeffs + reflection * coeffs[::-1].conj(), [reflection]])


def levinson(r, order: int) -> ArModel1D:
    """Solve the Toeplitz normal equations by order recursion.

    Parameters
    ----------
    r : array_like
        Autocorrelation lags ``r_0 .. r_max`` with ``max >= order`` and
        ``r_0 > 0`` (see :func:`arspec.autocorr.estimate_autocorr_1d`).
    order : int
        Requested prediction order, at least 1.

    The stage-``n`` reflection coefficient is ``-(r_n + sum r_{n-l} a_l) /
    P_{n-1}`` with ``P_0 = r_0`` and ``P_n = P_{n-1} (1 - |k_n|^2)``.

    Raises
    ------
    DegenerateSignalError
        If ``r_0 <= 0``.
    SingularityError
        If the error power falls below ``1e-14 r_0`` (perfectly predictable
        input) before a unit-circle reflection is seen.
    """
    r = np.asarray(r, dtype=complex)
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    if r.ndim != 1 or r.size < order + 1:
        raise ValueError(f"need lags r_0..r_{order}, got {r.size} lags")
    r0 = r[0].real
    if r0 <= 0.0:
        raise DegenerateSignalError(f"r_0 must be positive, got {r0}")

    coeffs = np.zeros(0, dtype=complex)
    power = r0
    history: list[LatticeStage] = []
    early = False
    for m in range(1, order + 1):
        if power <= POWER_FLOOR_SCALE * r0:
            raise SingularityError(
                f"prediction-error power {power:.3e} vanished at order {m}"
            )
        delta = r[m] + (r[m - 1 : 0 : -1] @ coeffs if m > 1 else 0.0)
        k = -delta / power
        coeffs = _extend(coeffs, k)
        power = power * (1.0 - (k * k.conjugate()).real)
        history.append(LatticeStage(m, coeffs.copy(), power, complex(k)))
        if abs(k) >= 1.0 - UNIT_CIRCLE_TOL and m < order:
            early = True
            break
    return ArModel1D(history[-1].order, coeffs, power, history, early)


def burg_classic(x, order: int, keep_errors: bool = False) -> ArModel1D:
    """Finite-sample Burg lattice with shrinking error supports.

    At stage ``m`` the reflection coefficient is estimated over the common
    support ``k in [m, N-1]``:

        ``k_m = -sum e_f(k) conj(e_b(k-1)) /
                (0.5 sum (|e_f(k)|^2 + |e_b(k-1)|^2))``

    which bounds ``|k_m| <= 1``; the error signals are then updated on the
    same window, losing one sample per order. ``error_power`` follows the
    ``P_m = P_{m-1} (1 - |k_m|^2)`` recursion from ``P_0 = sum |x|^2``.
    """
    x = as_signal_1d(x)
    n = x.size
    if not 1 <= order <= n - 1:
        raise ValueError(f"order must be in [1, {n - 1}], got {order}")

    ef = x.copy()
    eb = x.copy()
    power = np.vdot(x, x).real
    coeffs = np.zeros(0, dtype=complex)
    history: list[LatticeStage] = []
    early = False
    for m in range(1, order + 1):
        f = ef[m:]
        b = eb[m - 1 : n - 1]
        denom = 0.5 * (np.vdot(f, f).real + np.vdot(b, b).real)
        if denom == 0.0:
            raise DegenerateSignalError(f"zero error energy at order {m}")
        k = -np.vdot(b, f) / denom
        coeffs = _extend(coeffs, k)
        # f and b are views; build both updates before writing back.
        new_f = f + k * b
        new_b = b + k.conjugate() * f
        ef[m:] = new_f
        eb[m:] = new_b
        power = power * (1.0 - (k * k.conjugate()).real)
        errors = None
        if keep_errors:
            errors = ErrorSignals1D(ef[m:].copy(), eb[m:].copy(), m, n - 1)
        history.append(LatticeStage(m, coeffs.copy(), power, complex(k), errors))
        if abs(k) >= 1.0 - UNIT_CIRCLE_TOL and m < order:
            early = True
            break
    return ArModel1D(history[-1].order, coeffs, power, history, early)


def burg_modified(
    x,
    order: int,
    denominator: str = "forward",
    keep_errors: bool = False,
) -> ArModel1D:
    """Zero-padded Burg lattice; reproduces :func:`levinson` exactly.

    The error signals start as the signal itself on ``[0, N-1]`` and gain
    one sample per order instead of losing one; the recursion runs until
    the last nonzero value with ``e_b(-1) = 0`` and ``e_f`` zero past its
    support. The stage-``m`` reflection coefficient is

        ``k_m = -sum_k e_f(k) conj(e_b(k-1)) / sum_k |e_f(k)|^2``

    with both sums over the full extended support. Under zero padding the
    forward and backward error energies are equal at every stage, so
    ``denominator="backward"`` gives the same coefficients up to rounding
    (exposed for exactly that cross-check).

    The resulting coefficients equal ``levinson(estimate_autocorr_1d(x,
    order), order)`` up to rounding: the extended sums turn the lattice
    moments into biased lag sums with no boundary truncation.
    """
    x = as_signal_1d(x)
    n = x.size
    if not 1 <= order <= n - 1:
        raise ValueError(f"order must be in [1, {n - 1}], got {order}")
    if denominator not in ("forward", "backward"):
        raise ValueError(f"denominator must be 'forward' or 'backward', got {denominator!r}")

    ef = x.copy()
    eb = x.copy()
    power = np.vdot(x, x).real
    if power == 0.0:
        raise DegenerateSignalError("signal has zero energy")
    coeffs = np.zeros(0, dtype=complex)
    history: list[LatticeStage] = []
    early = False
    zero = np.zeros(1, dtype=complex)
    for m in range(1, order + 1):
        num = -np.vdot(eb[:-1], ef[1:])
        if denominator == "forward":
            denom = np.vdot(ef, ef).real
        else:
            denom = np.vdot(eb, eb).real
        if denom == 0.0:
            raise DegenerateSignalError(f"zero error energy at order {m}")
        k = num / denom
        coeffs = _extend(coeffs, k)
        ef_pad = np.concatenate([ef, zero])
        eb_prev = np.concatenate([zero, eb])
        ef = ef_pad + k * eb_prev
        eb = eb_prev + k.conjugate() * ef_pad
        power = power * (1.0 - (k * k.conjugate()).real)
        errors = None
        if keep_errors:
            errors = ErrorSignals1D(ef.copy(), eb.copy(), 0, n + m - 1)
        history.append(LatticeStage(m, coeffs.copy(), power, complex(k), errors))
        if abs(k) >= 1.0 - UNIT_CIRCLE_TOL and m < order:
            early = True
            break
    return ArModel1D(history[-1].order, coeffs, power, history, early)


def prediction_residual(x, coeffs) -> np.ndarray:
    """Forward prediction error ``x(k) + sum_l a_l x(k-l)`` on the
    zero-padded support, length ``N + order``."""
    x = as_signal_1d(x)
    filt = np.concatenate([[1.0 + 0.0j], np.asarray(coeffs, dtype=complex)])
    return np.convolve(filt, x)


def backward_prediction_residual(x, coeffs) -> np.ndarray:
    """Backward prediction error ``x(k-n) + sum_l conj(a_l) x(k+l-n)`` on
    the zero-padded support, length ``N + order``."""
    x = as_signal_1d(x)
    filt = np.concatenate([[1.0 + 0.0j], np.asarray(coeffs, dtype=complex)])
    return np.convolve(filt[::-1].conj(), x)


def residual_mse(x, model: ArModel1D, support: str = "window") -> float:
    """Mean squared forward-prediction error, normalized by ``N``.

    ``support="window"`` sums ``|x(k) + sum_l a_l x(k-l)|^2`` over the data
    window ``k in [0, N-1]`` with ``x(k) = 0`` for ``k < 0``.
    ``support="full"`` sums over the entire zero-padded residual,
    ``k in [0, N+order-1]`` (zero values for samples outside the record on
    both sides); for coefficients from the zero-padded lattice this equals
    the recursion's error power over ``N`` and is exactly nonincreasing in
    the order, whereas the windowed sum can fluctuate slightly through the
    dropped tail. Any model order is accepted.
    """
    x = as_signal_1d(x)
    res = prediction_residual(x, model.coeffs)
    if support == "window":
        res = res[: x.size]
    elif support != "full":
        raise ValueError(f"support must be 'window' or 'full', got {support!r}")
    return float(np.sum(np.abs(res) ** 2) / x.size)
