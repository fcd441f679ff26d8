"""Fringe fitting, visibility, classical-bound test and singles flatness."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import least_squares

CLASSICAL_LIMIT = 1 / math.sqrt(2)
SCAN_COLUMNS = ["u_volts", "u_squared", "coincidences", "singles_s", "singles_i", "err_poisson"]


class FitError(ValueError):
    pass


class ScanFormatError(ValueError):
    def __init__(self, message, rows=()):
        super().__init__(message)
        self.rows = list(rows)


@dataclass
class FringeScan:
    u: np.ndarray
    coincidences: np.ndarray
    singles_s: np.ndarray
    singles_i: np.ndarray
    heater: str = ""
    n_pulses: int = 0
    histogram: dict = field(default_factory=dict)  # offset_ps -> counts, summed over points

    def __post_init__(self):
        self.u = np.asarray(self.u, dtype=float)
        for name in ("coincidences", "singles_s", "singles_i"):
            arr = np.asarray(getattr(self, name), dtype=float)
            if np.any(arr < 0):
                raise ValueError(f"{name} must be non-negative")
            setattr(self, name, arr)
        if self.u.size > 1 and np.any(np.diff(self.u) < 0):
            raise ValueError("scan voltages must be ascending")

    @property
    def u_squared(self) -> np.ndarray:
        return self.u**2

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(SCAN_COLUMNS)
        for u, c, s, i in zip(self.u, self.coincidences, self.singles_s, self.singles_i):
            w.writerow([repr(float(u)), repr(float(u * u)), int(c), int(s), int(i),
                        repr(math.sqrt(max(c, 1.0)))])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, heater: str = "") -> "FringeScan":
        reader = csv.reader(io.StringIO(text))
        header = next(reader, None)
        if header is None or [h.strip() for h in header[:5]] != SCAN_COLUMNS[:5]:
            raise ScanFormatError(f"bad header {header!r}; expected {','.join(SCAN_COLUMNS)}", [1])
        rows, bad = [], []
        for n, row in enumerate(reader, start=2):
            if not row:
                continue
            try:
                u, _, c, s, i = (float(x) for x in row[:5])
                if min(c, s, i) < 0 or len(row) < 5:
                    raise ValueError
                rows.append((u, c, s, i))
            except ValueError:
                bad.append(n)
        if bad:
            raise ScanFormatError(f"malformed rows: {', '.join(map(str, bad))}", bad)
        if not rows:
            raise ScanFormatError("scan has no data rows")
        arr = np.array(rows)
        return cls(arr[:, 0], arr[:, 1], arr[:, 2], arr[:, 3], heater=heater)


@dataclass(frozen=True)
class FringeFit:
    """C(x) = c0 + a cos(alpha x + theta0), x = u**2 (or phase)."""

    c0: float
    a: float
    alpha: float
    theta0: float
    covariance: np.ndarray
    chi2: float
    dof: int
    alpha_identifiable: bool = True
    clamped: bool = False
    raw_visibility: float = float("nan")
    n_iter: int = 0

    def model(self, x) -> np.ndarray:
        return self.c0 + self.a * np.cos(self.alpha * np.asarray(x) + self.theta0)


def _linear_fit(x, y, w, alpha):
    """Weighted LS of y ~ c0 + A cos(alpha x) + B sin(alpha x); returns (params, chi2)."""
    X = np.column_stack([np.ones_like(x), np.cos(alpha * x), np.sin(alpha * x)])
    sw = np.sqrt(w)
    coef, *_ = np.linalg.lstsq(X * sw[:, None], y * sw, rcond=None)
    r = (X @ coef - y) * sw
    return coef, float(r @ r)


def _scan_alpha(x, y, w, alphas):
    """Chi-square of the linear sub-problem for every trial frequency at once."""
    ph = np.outer(alphas, x)
    X = np.stack([np.ones_like(ph), np.cos(ph), np.sin(ph)], axis=-1)  # (K, n, 3)
    Xw = X * w[None, :, None]
    A = np.einsum("kni,knj->kij", Xw, X)
    b = np.einsum("kni,n->ki", Xw, y)
    ok = np.linalg.cond(A) < 1e12
    chi2 = np.full(alphas.size, np.inf)
    coef = np.linalg.solve(A[ok], b[ok][..., None])[..., 0]
    r = np.einsum("kni,ki->kn", X[ok], coef) - y
    chi2[ok] = np.einsum("kn,n,kn->k", r, w, r)
    return chi2


def _initial_alpha(x, y, w):
    span = x.max() - x.min()
    lo = 2 * math.pi * 0.95 / span
    hi = math.pi / max(float(np.median(np.diff(np.sort(x)))), 1e-300)  # Nyquist
    hi = max(hi, 2 * lo)
    grid = np.geomspace(lo, hi, max(200, int(40 * math.log2(hi / lo))))
    dx = abs(x[np.argmax(y)] - x[np.argmin(y)])
    if dx > 0 and lo <= math.pi / dx <= hi:
        grid = np.append(grid, math.pi / dx)
    chi2 = _scan_alpha(x, y, w, grid)
    k = int(np.argmin(chi2))
    # polish on a fine local grid
    fine = grid[k] * np.linspace(0.97, 1.03, 61)
    return float(fine[int(np.argmin(_scan_alpha(x, y, w, fine)))])


def fit_fringe(scan: FringeScan | tuple, alpha: float | None = None, max_iter: int = 200) -> FringeFit:
    """Poisson-weighted cosine fit of coincidences against u**2.

    Pass ``scan`` as ``(x, counts)`` to fit against another abscissa; with
    ``alpha`` given the frequency is held fixed (phase-abscissa mode).
    """
    if isinstance(scan, FringeScan):
        x, y = scan.u_squared, scan.coincidences
    else:
        x, y = (np.asarray(v, dtype=float) for v in scan)
    if x.size < 6:
        raise FitError(f"need at least 6 points, got {x.size}")
    w = 1.0 / np.maximum(y, 1.0)
    raw_v = float((y.max() - y.min()) / (y.max() + y.min())) if y.max() + y.min() > 0 else 0.0

    if y.max() == y.min():
        cov = np.full((4, 4), np.nan)
        cov[0, 0] = 1.0 / w.sum()
        cov[1, 1] = 1.0 / w.sum()
        return FringeFit(float(y.mean()), 0.0, float("nan") if alpha is None else alpha, 0.0, cov,
                         0.0, x.size - 4, alpha_identifiable=False, raw_visibility=0.0)

    if alpha is None:
        alpha0 = _initial_alpha(x, y, w)
    else:
        alpha0 = float(alpha)
    (c0, A, B), _ = _linear_fit(x, y, w, alpha0)
    p0 = np.array([c0, math.hypot(A, B), alpha0, math.atan2(-B, A)])
    sw = np.sqrt(w)
    free = slice(None) if alpha is None else [0, 1, 3]

    def unpack(q):
        p = p0.copy()
        p[free] = q
        return p

    def resid(q):
        c0_, a_, al, th = unpack(q)
        return (c0_ + a_ * np.cos(al * x + th) - y) * sw

    def jac(q):
        c0_, a_, al, th = unpack(q)
        ph = al * x + th
        J = np.column_stack([np.ones_like(x), np.cos(ph), -a_ * x * np.sin(ph), -a_ * np.sin(ph)])
        return (J * sw[:, None])[:, free]

    sol = least_squares(resid, p0[free], jac=jac, method="lm", xtol=1e-10, ftol=1e-15,
                        gtol=1e-15, max_nfev=max_iter)
    c0, a, al, th = unpack(sol.x)
    J = jac(sol.x)
    norms = np.linalg.norm(J, axis=0)
    if np.any(norms == 0) or np.linalg.matrix_rank(J / norms) < J.shape[1]:
        raise FitError("rank-deficient fit: data do not constrain all fringe parameters")
    cov_free = np.linalg.inv(J.T @ J)
    cov = np.zeros((4, 4))
    idx = np.arange(4)[free]
    cov[np.ix_(idx, idx)] = cov_free
    if a < 0:
        a, th = -a, th + math.pi
        cov[1, :] *= -1
        cov[:, 1] *= -1
    th = (th + math.pi) % (2 * math.pi) - math.pi
    if alpha is None and al * (x.max() - x.min()) < 2 * math.pi * (1 - 1e-9):
        raise FitError(
            f"scan spans {al * (x.max() - x.min()) / (2 * math.pi):.3f} fringe periods; need at least one"
        )
    clamped = a > c0
    chi2 = float(np.sum(sol.fun**2))
    return FringeFit(float(c0), float(min(a, c0) if clamped else a), float(al), float(th), cov, chi2,
                     x.size - len(idx), clamped=clamped, raw_visibility=raw_v, n_iter=int(sol.nfev))


def visibility(fit: FringeFit) -> tuple[float, float]:
    """V = a/c0 clipped to [0, 1], with first-order error propagation."""
    if fit.c0 <= 0:
        raise FitError("non-positive fringe offset; visibility undefined")
    v = fit.a / fit.c0
    g = np.array([-fit.a / fit.c0**2, 1.0 / fit.c0])
    var = float(g @ fit.covariance[:2, :2] @ g)
    return float(min(max(v, 0.0), 1.0)), math.sqrt(max(var, 0.0))


def classical_limit_test(v: float, sigma_v: float, limit: float = CLASSICAL_LIMIT) -> str:
    if v - 3 * sigma_v > limit:
        return "pass"
    if v + 3 * sigma_v < limit:
        return "fail"
    return "inconclusive"


def singles_flatness(scan: FringeScan) -> tuple[float, float, int]:
    """Chi-square of each singles series against its Poisson-weighted mean."""
    n = scan.u.size
    if n < 3:
        raise ValueError("need at least 3 points")

    def chi2(s):
        var = np.maximum(s, 1.0)
        mean = np.sum(s / var) / np.sum(1 / var)
        return float(np.sum((s - mean) ** 2 / var))

    return chi2(scan.singles_s), chi2(scan.singles_i), n - 1


def fit_report(fit: FringeFit) -> dict:
    v, sv = visibility(fit)
    return {
        "c0": fit.c0,
        "a": fit.a,
        "alpha": fit.alpha if math.isfinite(fit.alpha) else None,
        "theta0": fit.theta0,
        "V": v,
        "sigma_V": sv,
        "V_raw": fit.raw_visibility,
        "chi2": fit.chi2,
        "dof": fit.dof,
        "verdict": classical_limit_test(v, sv),
    }
