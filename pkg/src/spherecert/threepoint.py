"""Symmetric triple functions F(t, u, v) and their certificate machinery.

Matrix-form certificates expand F as sum_k <H_k, S_k(t, u, v)> against the
matrix kernels S_k used in three-point bounds for sphere codes. The entry
(i, j) of the un-symmetrized kernel is

    u^i v^j ((1-u^2)(1-v^2))^(k/2) G_k(s),   s = (t-uv)/sqrt((1-u^2)(1-v^2)),

with G_k the normalized degree-k Gegenbauer polynomial in dimension n-1;
S_k averages that over the six role assignments of (t, u, v). Entries are
stored as genuine polynomials in (t, u, v): clearing the square root degree
by degree removes the 0/0 at |u| = 1 or |v| = 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .codes import SphericalCode
from .errors import CapabilityError, ParameterError
from .gegenbauer import monomial_coeffs

__all__ = [
    "TripleCertificate",
    "bv_matrix",
    "triple_eval",
    "triple_sum",
    "triple_sum_parts",
    "TripleSumParts",
    "psd_check",
    "PsdResult",
    "certificate_valid",
    "CertificateReport",
]


# ---------------------------------------------------------------------------
# Trivariate polynomials as {(i, j, k): coefficient} dictionaries.

def _p_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) + c
        if out[e] == 0:
            del out[e]
    return out


def _p_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = (ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2])
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c != 0}


def _p_scale(a: dict, s) -> dict:
    return {e: c * s for e, c in a.items()} if s != 0 else {}


def _p_pow(a: dict, m: int) -> dict:
    out = {(0, 0, 0): Fraction(1)}
    for _ in range(m):
        out = _p_mul(out, a)
    return out


def _p_permute(a: dict, perm: tuple[int, int, int]) -> dict:
    """Relabel variables: new exponent tuple e' with e'[perm[i]] = e[i]."""
    out: dict = {}
    for e, c in a.items():
        ne = [0, 0, 0]
        for pos, ex in zip(perm, e):
            ne[pos] = ex
        key = tuple(ne)
        out[key] = out.get(key, 0) + c
    return out


def _p_eval(a: dict, t, u, v):
    """Evaluate on scalars or broadcast arrays via precomputed power tables."""
    t = np.asarray(t, dtype=float)
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    shape = np.broadcast_shapes(t.shape, u.shape, v.shape)
    if not a:
        return np.zeros(shape)
    dmax = [max(e[i] for e in a) for i in range(3)]
    pows = []
    for var, dm in zip((t, u, v), dmax):
        table = [np.ones(shape)]
        for _ in range(dm):
            table.append(table[-1] * var)
        pows.append(table)
    out = np.zeros(shape)
    for (i, j, k), c in a.items():
        out += float(c) * pows[0][i] * pows[1][j] * pows[2][k]
    return out


def _p_partial_bound(a: dict, axis: int) -> float:
    """Bound on |d/dx_axis| over [-1, 1]^3: sum of |coeff| * exponent."""
    return float(sum(abs(float(c)) * e[axis] for e, c in a.items()))


def _p_restrict_diag(a: dict) -> np.ndarray:
    """Coefficients of p(1, s, s) as a univariate polynomial in s."""
    if not a:
        return np.zeros(1)
    deg = max(e[1] + e[2] for e in a)
    out = np.zeros(deg + 1)
    for (i, j, k), c in a.items():
        out[j + k] += float(c)
    return out


# ---------------------------------------------------------------------------
# Kernel matrices S_k.

_SK_CACHE: dict = {}


def _kernel_poly(n: int, k: int) -> dict:
    """((1-u^2)(1-v^2))^(k/2) G_k((t-uv)/sqrt(...)) as an exact polynomial."""
    mono = monomial_coeffs(n - 1, k)
    t_minus_uv = {(1, 0, 0): Fraction(1), (0, 1, 1): Fraction(-1)}
    one_m_u2 = {(0, 0, 0): Fraction(1), (0, 2, 0): Fraction(-1)}
    one_m_v2 = {(0, 0, 0): Fraction(1), (0, 0, 2): Fraction(-1)}
    radical = _p_mul(one_m_u2, one_m_v2)
    out: dict = {}
    for m, am in enumerate(mono):
        if am == 0:
            continue
        # parity of G_k makes (k - m) even whenever am != 0
        term = _p_mul(_p_pow(t_minus_uv, m), _p_pow(radical, (k - m) // 2))
        out = _p_add(out, _p_scale(term, am))
    return out


def _sk_entries(n: int, k: int, d: int) -> list[list[dict]]:
    """Exact entry polynomials of the symmetrized kernel matrix S_k."""
    key = (n, k, d)
    if key in _SK_CACHE:
        return _SK_CACHE[key]
    size = d + 1 - k
    q_t = _kernel_poly(n, k)           # opposite variable t, sides (u, v)
    q_u = _p_permute(q_t, (1, 0, 2))   # opposite u, sides (t, v)
    q_v = _p_permute(q_t, (2, 1, 0))   # opposite v, sides (t, u)
    sixth = Fraction(1, 6)
    entries: list[list[dict]] = [[{} for _ in range(size)] for _ in range(size)]
    for i in range(size):
        for j in range(i, size):
            total: dict = {}
            for q, (ei, ej) in (
                (q_t, ((0, i, 0), (0, 0, j))),  # u^i v^j
                (q_t, ((0, j, 0), (0, 0, i))),  # u^j v^i
                (q_u, ((i, 0, 0), (0, 0, j))),  # t^i v^j
                (q_u, ((j, 0, 0), (0, 0, i))),  # t^j v^i
                (q_v, ((i, 0, 0), (0, j, 0))),  # t^i u^j
                (q_v, ((j, 0, 0), (0, i, 0))),  # t^j u^i
            ):
                mono = {(ei[0] + ej[0], ei[1] + ej[1], ei[2] + ej[2]): sixth}
                total = _p_add(total, _p_mul(mono, q))
            entries[i][j] = total
            entries[j][i] = total
    _SK_CACHE[key] = entries
    return entries


def bv_matrix(n: int, k: int, d: int, t: float, u: float, v: float) -> np.ndarray:
    """The (d+1-k)-square symmetrized kernel matrix S_k at (t, u, v)."""
    if n < 3:
        raise ParameterError("kernel matrices need dimension >= 3")
    if not 0 <= k <= d:
        raise ParameterError(f"need 0 <= k <= d, got k={k}, d={d}")
    for name, x in (("t", t), ("u", u), ("v", v)):
        if abs(x) > 1 + 1e-12:
            raise ParameterError(f"{name}={x} outside [-1, 1]")
    entries = _sk_entries(n, k, d)
    size = d + 1 - k
    out = np.empty((size, size))
    for i in range(size):
        for j in range(i, size):
            val = float(_p_eval(entries[i][j], t, u, v))
            out[i, j] = val
            out[j, i] = val
    return out


# ---------------------------------------------------------------------------
# Certificates.

@dataclass(eq=False)
class TripleCertificate:
    """Symmetric triple function with a threshold F0.

    form='matrix': F = sum_k <H_k, S_k> with H_k square symmetric of size
    d+1-k. form='explicit': F is the symmetrization of sum a * t^i u^j v^k
    over the given terms.
    """

    form: str
    F0: float = 0.0
    # matrix form
    n: int | None = None
    d: int | None = None
    H: list[np.ndarray] | None = None
    # explicit form
    terms: list[tuple[int, int, int, float]] | None = None
    _poly: dict | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.form == "matrix":
            if self.n is None or self.d is None or self.H is None:
                raise ParameterError("matrix certificate needs n, d and H")
            if len(self.H) != self.d + 1:
                raise ParameterError(f"expected {self.d + 1} matrices, got {len(self.H)}")
            mats = []
            for k, h in enumerate(self.H):
                h = np.asarray(h, dtype=float)
                size = self.d + 1 - k
                if h.shape != (size, size):
                    raise ParameterError(
                        f"H[{k}] must be {size}x{size}, got {h.shape}"
                    )
                if not np.allclose(h, h.T, atol=1e-12, rtol=0.0):
                    raise ParameterError(f"H[{k}] is not symmetric")
                mats.append(h)
            self.H = mats
        elif self.form == "explicit":
            if self.terms is None:
                raise ParameterError("explicit certificate needs terms")
            self.terms = [(int(i), int(j), int(k), float(a)) for i, j, k, a in self.terms]
        else:
            raise ParameterError(f"unknown certificate form {self.form!r}")

    @classmethod
    def from_matrices(cls, n: int, d: int, H, F0: float = 0.0) -> "TripleCertificate":
        return cls(form="matrix", n=n, d=d, H=list(H), F0=F0)

    @classmethod
    def from_terms(cls, terms, F0: float = 0.0) -> "TripleCertificate":
        return cls(form="explicit", terms=list(terms), F0=F0)

    def poly(self) -> dict:
        """F pre-expanded to a monomial dictionary (cached)."""
        if self._poly is None:
            if self.form == "matrix":
                total: dict = {}
                for k, h in enumerate(self.H):
                    entries = _sk_entries(self.n, k, self.d)
                    size = self.d + 1 - k
                    for i in range(size):
                        for j in range(size):
                            if h[i, j] != 0.0:
                                total = _p_add(total, _p_scale(entries[i][j], h[i, j]))
                self._poly = {e: float(c) for e, c in total.items()}
            else:
                total = {}
                perms = ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0))
                for i, j, k, a in self.terms:
                    for p in perms:
                        e = tuple((i, j, k)[p.index(axis)] for axis in range(3))
                        total[e] = total.get(e, 0.0) + a / 6.0
                self._poly = {e: c for e, c in total.items() if c != 0.0}
        return self._poly

    def eval(self, t, u, v):
        """Evaluate F; accepts scalars or broadcastable arrays."""
        out = _p_eval(self.poly(), t, u, v)
        return float(out) if out.ndim == 0 else out

    def at_diagonal_one(self) -> float:
        """F(1, 1, 1)."""
        return self.eval(1.0, 1.0, 1.0)

    def diag_restriction(self) -> np.ndarray:
        """Univariate coefficients of s -> F(1, s, s)."""
        return _p_restrict_diag(self.poly())

    def gradient_bounds(self) -> tuple[float, float, float]:
        """Per-variable Lipschitz bounds of F over [-1, 1]^3."""
        p = self.poly()
        return tuple(_p_partial_bound(p, axis) for axis in range(3))

    def to_dict(self) -> dict:
        if self.form == "matrix":
            return {
                "n": int(self.n),
                "d": int(self.d),
                "F0": float(self.F0),
                "H": [h.tolist() for h in self.H],
            }
        return {
            "F0": float(self.F0),
            "terms": [{"i": i, "j": j, "k": k, "a": a} for i, j, k, a in self.terms],
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "TripleCertificate":
        if "H" in obj:
            try:
                return cls.from_matrices(
                    int(obj["n"]), int(obj["d"]), obj["H"], float(obj.get("F0", 0.0))
                )
            except (KeyError, TypeError, ValueError) as exc:
                raise ParameterError(f"bad matrix certificate: {exc}")
        if "terms" in obj:
            try:
                terms = [(tm["i"], tm["j"], tm["k"], tm["a"]) for tm in obj["terms"]]
            except (KeyError, TypeError) as exc:
                raise ParameterError(f"bad explicit certificate: {exc}")
            return cls.from_terms(terms, float(obj.get("F0", 0.0)))
        raise ParameterError("certificate object needs either 'H' or 'terms'")


def triple_eval(F: TripleCertificate, t, u, v):
    """Value of the symmetric triple function F at (t, u, v)."""
    return F.eval(t, u, v)


@dataclass
class TripleSumParts:
    """S_F split by coincidence pattern of the ordered triple."""

    total: float
    diagonal: float        # x = y = z:            N * F(1,1,1)
    paired: float          # exactly two coincide: 3 * sum F(1, t, t)
    distinct: float        # pairwise distinct points


def triple_sum(code: SphericalCode, F: TripleCertificate) -> float:
    """S_F: sum of F(x.y, x.z, y.z) over all N^3 ordered triples."""
    return triple_sum_parts(code, F).total


def triple_sum_parts(code: SphericalCode, F: TripleCertificate) -> TripleSumParts:
    if F.form == "matrix" and F.n != code.n:
        raise ParameterError(
            f"certificate dimension {F.n} does not match code dimension {code.n}"
        )
    gram = code.gram()
    N = code.size
    total = 0.0
    # chunk over the first index to keep memory at O(N^2)
    for a in range(N):
        t = gram[a][:, None]          # t = x_a . x_b
        u = gram[a][None, :]          # u = x_a . x_c
        total += float(np.sum(F.eval(t, u, gram)))
    diagonal = N * F.at_diagonal_one()
    off = ~np.eye(N, dtype=bool)
    paired = 3.0 * float(np.sum(F.eval(1.0, gram[off], gram[off])))
    return TripleSumParts(total, diagonal, paired, total - diagonal - paired)


# ---------------------------------------------------------------------------
# Positive-semidefiniteness checks.

@dataclass
class PsdResult:
    ok: bool
    min_eigenvalue: float
    witness: np.ndarray | None = None

    def to_dict(self) -> dict:
        out = {"ok": self.ok, "min_eigenvalue": self.min_eigenvalue}
        if self.witness is not None:
            out["witness"] = [float(x) for x in self.witness]
        return out


def psd_check(m: np.ndarray, tol: float = 1e-9) -> PsdResult:
    """Decide lambda_min(m) >= -tol; on failure return a witness w with
    w' m w < -tol."""
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ParameterError("psd_check needs a square matrix")
    if not np.allclose(m, m.T, atol=max(tol, 1e-12), rtol=0.0):
        raise ParameterError("psd_check needs a symmetric matrix")
    vals, vecs = np.linalg.eigh((m + m.T) / 2.0)
    lo = float(vals[0])
    if lo >= -tol:
        return PsdResult(True, lo)
    return PsdResult(False, lo, witness=vecs[:, 0])


@dataclass
class CertificateReport:
    valid: bool
    checks: dict[str, PsdResult]

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "checks": {name: res.to_dict() for name, res in self.checks.items()},
        }


def certificate_valid(F: TripleCertificate, tol: float = 1e-9) -> CertificateReport:
    """PSD side conditions of a matrix certificate: every H_k with k > 0,
    and H_0 - F0*E0 where E0 has a single 1 in the top-left corner."""
    if F.form != "matrix":
        raise CapabilityError(
            "explicit certificates carry no PSD data; validity is only "
            "observable through triple sums"
        )
    checks: dict[str, PsdResult] = {}
    shifted = F.H[0].copy()
    shifted[0, 0] -= F.F0
    checks["H0-F0*E0"] = psd_check(shifted, tol)
    for k in range(1, F.d + 1):
        checks[f"H{k}"] = psd_check(F.H[k], tol)
    return CertificateReport(all(r.ok for r in checks.values()), checks)
