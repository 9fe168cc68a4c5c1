"""Inner loops for polynomial arithmetic over Z/pZ.

Arrays are little-endian coefficient vectors of residues in [0, p).  Two
backends implement the same three kernels:

* ``numba``  - scalar loops compiled with ``@njit``; int64 only, p < 2**31.
* ``numpy``  - vectorized fallback; int64 when products cannot overflow,
  object dtype (Python ints) otherwise, so any prime modulus works.

Set ``MONOGEN_NUMBA=0`` to force the numpy path.  The numba backend is also
skipped when numba is not importable.
"""
from __future__ import annotations

import os

import numpy as np

# p*p must fit in a signed 64-bit accumulator after one reduction step
NUMBA_PRIME_LIMIT = 1 << 31
# np.convolve sums up to len terms of size < p**2 before reducing
_INT64_SAFE = (1 << 62)


def _env_wants_numba() -> bool:
    return os.environ.get("MONOGEN_NUMBA", "1").strip().lower() not in ("0", "false", "no", "off")


try:
    if not _env_wants_numba():
        raise ImportError("disabled by MONOGEN_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False


# ---------------------------------------------------------------- numpy path


def np_dtype_for(p: int) -> type:
    return np.int64 if p < NUMBA_PRIME_LIMIT else object


def np_mul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if len(a) == 0 or len(b) == 0:
        return a[:0]
    if a.dtype != object and min(len(a), len(b)) * (p - 1) ** 2 < _INT64_SAFE:
        return np.convolve(a, b) % p
    out = np.convolve(a.astype(object), b.astype(object)) % p
    return out if a.dtype == object else out.astype(np.int64)


def np_rem(a: np.ndarray, m: np.ndarray, p: int, inv_lc: int) -> np.ndarray:
    """a mod m; m has nonzero leading coefficient with inverse inv_lc."""
    dm = len(m) - 1
    r = a.copy()
    if len(r) <= dm:
        return r
    for i in range(len(r) - 1, dm - 1, -1):
        c = r[i]
        if c:
            c = c * inv_lc % p
            r[i - dm : i + 1] = (r[i - dm : i + 1] - c * m) % p
    return r[:dm]


def np_divmod(a: np.ndarray, m: np.ndarray, p: int, inv_lc: int) -> tuple[np.ndarray, np.ndarray]:
    dm = len(m) - 1
    r = a.copy()
    if len(r) <= dm:
        return r[:0], r
    q = np.zeros(len(r) - dm, dtype=r.dtype)
    for i in range(len(r) - 1, dm - 1, -1):
        c = r[i]
        if c:
            c = c * inv_lc % p
            q[i - dm] = c
            r[i - dm : i + 1] = (r[i - dm : i + 1] - c * m) % p
    return q, r[:dm]


def np_mulmod(a: np.ndarray, b: np.ndarray, m: np.ndarray, p: int, inv_lc: int) -> np.ndarray:
    return np_rem(np_mul(a, b, p), m, p, inv_lc)


# ---------------------------------------------------------------- numba path

if HAVE_NUMBA:

    @njit(cache=True)
    def nb_mul(a, b, p):
        la, lb = a.shape[0], b.shape[0]
        if la == 0 or lb == 0:
            return np.zeros(0, dtype=np.int64)
        out = np.zeros(la + lb - 1, dtype=np.int64)
        for i in range(la):
            ai = a[i]
            if ai == 0:
                continue
            for j in range(lb):
                out[i + j] = (out[i + j] + ai * b[j]) % p
        return out

    @njit(cache=True)
    def _nb_reduce_inplace(r, m, p, inv_lc, q):
        dm = m.shape[0] - 1
        for i in range(r.shape[0] - 1, dm - 1, -1):
            c = r[i]
            if c != 0:
                c = c * inv_lc % p
                if q.shape[0] > 0:
                    q[i - dm] = c
                for j in range(dm + 1):
                    r[i - dm + j] = (r[i - dm + j] - c * m[j]) % p

    @njit(cache=True)
    def nb_rem(a, m, p, inv_lc):
        dm = m.shape[0] - 1
        if a.shape[0] <= dm:
            return a.copy()
        r = a.copy()
        _nb_reduce_inplace(r, m, p, inv_lc, np.zeros(0, dtype=np.int64))
        return r[:dm].copy()

    @njit(cache=True)
    def nb_divmod(a, m, p, inv_lc):
        dm = m.shape[0] - 1
        if a.shape[0] <= dm:
            return np.zeros(0, dtype=np.int64), a.copy()
        r = a.copy()
        q = np.zeros(a.shape[0] - dm, dtype=np.int64)
        _nb_reduce_inplace(r, m, p, inv_lc, q)
        return q, r[:dm].copy()

    @njit(cache=True)
    def nb_mulmod(a, b, m, p, inv_lc):
        return nb_rem(nb_mul(a, b, p), m, p, inv_lc)

    @njit(cache=True)
    def nb_frobenius_orbit(h0, m, p, inv_lc, steps):
        """Rows k = 0..steps-1 hold h0**(p**k) mod m (h0 already reduced)."""
        dm = m.shape[0] - 1
        out = np.zeros((steps, dm), dtype=np.int64)
        h = np.zeros(dm, dtype=np.int64)
        h[: h0.shape[0]] = h0
        for k in range(steps):
            out[k, :] = h
            # h <- h**p mod m by square-and-multiply on the bits of p
            res = np.zeros(1, dtype=np.int64)
            res[0] = 1
            base = h.copy()
            e = p
            while e > 0:
                if e & 1:
                    res = nb_mulmod(res, base, m, p, inv_lc)
                e >>= 1
                if e > 0:
                    base = nb_mulmod(base, base, m, p, inv_lc)
            h = np.zeros(dm, dtype=np.int64)
            h[: res.shape[0]] = res
        return out


def backend_for(p: int, force: str | None = None) -> str:
    """Which backend handles modulus p ("numba" or "numpy")."""
    if force is not None:
        if force == "numba" and not (HAVE_NUMBA and p < NUMBA_PRIME_LIMIT):
            raise ValueError(f"numba backend unavailable for p={p}")
        return force
    return "numba" if HAVE_NUMBA and p < NUMBA_PRIME_LIMIT else "numpy"


def mul(a, b, p, backend=None):
    # np.convolve beats the compiled loop whenever int64 cannot overflow
    safe = min(len(a), len(b)) * (p - 1) ** 2 < _INT64_SAFE
    if backend_for(p, backend) == "numba" and not (backend is None and safe):
        return nb_mul(a, b, p)
    return np_mul(a, b, p)


def rem(a, m, p, inv_lc, backend=None):
    if backend_for(p, backend) == "numba":
        return nb_rem(a, m, p, inv_lc)
    return np_rem(a, m, p, inv_lc)


def divmod_(a, m, p, inv_lc, backend=None):
    if backend_for(p, backend) == "numba":
        return nb_divmod(a, m, p, inv_lc)
    return np_divmod(a, m, p, inv_lc)


def mulmod(a, b, m, p, inv_lc, backend=None):
    if backend_for(p, backend) == "numba":
        if backend is None:
            return nb_rem(mul(a, b, p), m, p, inv_lc)
        return nb_mulmod(a, b, m, p, inv_lc)
    return np_mulmod(a, b, m, p, inv_lc)


def powmod(b, e: int, m, p, inv_lc, backend=None):
    """b**e mod m; e may exceed 64 bits, so the bit loop stays in Python."""
    dtype = b.dtype if len(b) else np_dtype_for(p)
    result = np.ones(1, dtype=dtype) if len(m) > 1 else np.zeros(0, dtype=dtype)
    base = rem(b, m, p, inv_lc, backend)
    for bit in bin(e)[2:]:
        result = mulmod(result, result, m, p, inv_lc, backend)
        if bit == "1":
            result = mulmod(result, base, m, p, inv_lc, backend)
    return result


def frobenius_orbit(h0, m, p, inv_lc, steps: int, backend=None) -> list[np.ndarray]:
    """[h0, h0**p, h0**(p**2), ...] mod m, ``steps`` entries, each padded to deg m."""
    dm = len(m) - 1
    if backend_for(p, backend) == "numba":
        rows = nb_frobenius_orbit(h0, m, p, inv_lc, steps)
        return [rows[k] for k in range(steps)]
    out = []
    h = h0
    for _ in range(steps):
        padded = np.zeros(dm, dtype=h0.dtype if len(h0) else np_dtype_for(p))
        padded[: len(h)] = h
        out.append(padded)
        h = powmod(h, p, m, p, inv_lc, "numpy")
    return out
