"""Sparse trigonometric polynomials and grid samples on the d-torus.

Frequency-space objects are sparse integer-indexed coefficient tables
(:class:`TrigPoly`); sample-space objects live on uniform N^d grids
(:class:`GridFunction`).  Grid nodes sit at theta_k = 2*pi*(k + offset)/N
per axis.  The default half-cell offset keeps symmetric lattice zeros of
real polynomials off the quadrature nodes, which matters for
geometric-mean quadrature; transforms carry explicit phase corrections
for the offset, so frequency recovery is exact (up to rounding) for
band-limited data at any offset.

All transforms go through numpy's FFT.  Inner products are normalized
against Lebesgue measure of total mass one, i.e. plain means over grid
nodes, and numpy's pairwise summation keeps reductions reproducible.
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterable, Mapping

import numpy as np

MultiIndex = tuple[int, ...]

GRID_MAGIC = b"RLGF"
_HEADER = struct.Struct("<4sIII")  # magic, dim, n_per_axis, offset in half-cells


def _as_multi_index(alpha: Iterable[int], dim: int) -> MultiIndex:
    idx = tuple(int(a) for a in alpha)
    if len(idx) != dim:
        raise ValueError(f"index {idx} has length {len(idx)}, expected {dim}")
    return idx


@dataclass(frozen=True)
class TrigPoly:
    """Trigonometric polynomial sum_alpha c_alpha e^{i alpha . theta} on T^dim.

    Canonical sparse form: exactly-zero coefficients are never stored.
    Instances are treated as immutable values.
    """

    dim: int
    coeffs: dict[MultiIndex, complex]

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError("dim must be >= 1")
        cleaned = {}
        for alpha, c in self.coeffs.items():
            idx = _as_multi_index(alpha, self.dim)
            c = complex(c)
            if c != 0:
                cleaned[idx] = c
        object.__setattr__(self, "coeffs", cleaned)

    # -- constructors -------------------------------------------------

    @classmethod
    def from_coeffs(cls, dim: int, coeffs: Mapping[Iterable[int], complex]) -> "TrigPoly":
        return cls(dim=dim, coeffs=dict(coeffs))

    @classmethod
    def zero(cls, dim: int) -> "TrigPoly":
        return cls(dim=dim, coeffs={})

    @classmethod
    def monomial(cls, alpha: Iterable[int], c: complex = 1.0) -> "TrigPoly":
        idx = tuple(int(a) for a in alpha)
        return cls(dim=len(idx), coeffs={idx: complex(c)})

    # -- basic queries -------------------------------------------------

    def coeff(self, alpha: Iterable[int]) -> complex:
        return self.coeffs.get(tuple(int(a) for a in alpha), 0.0 + 0.0j)

    def bandwidth(self) -> int:
        """Largest |alpha_i| over the support (0 for a constant)."""
        if not self.coeffs:
            return 0
        return max(max(abs(a) for a in alpha) for alpha in self.coeffs)

    def l2_norm(self) -> float:
        """Parseval norm sqrt(sum |c_alpha|^2)."""
        return float(np.sqrt(sum(abs(c) ** 2 for c in self.coeffs.values())))

    def is_analytic(self) -> bool:
        return all(min(alpha) >= 0 for alpha in self.coeffs) if self.coeffs else True

    # -- algebra ---------------------------------------------------------

    def __add__(self, other: "TrigPoly") -> "TrigPoly":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        out = dict(self.coeffs)
        for alpha, c in other.coeffs.items():
            out[alpha] = out.get(alpha, 0.0) + c
        return TrigPoly(self.dim, out)

    def __sub__(self, other: "TrigPoly") -> "TrigPoly":
        return self + other.scale(-1.0)

    def scale(self, c: complex) -> "TrigPoly":
        return TrigPoly(self.dim, {a: v * c for a, v in self.coeffs.items()})

    def __mul__(self, other: "TrigPoly | complex | float") -> "TrigPoly":
        if not isinstance(other, TrigPoly):
            return self.scale(complex(other))
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        out: dict[MultiIndex, complex] = {}
        for a1, c1 in self.coeffs.items():
            for a2, c2 in other.coeffs.items():
                key = tuple(x + y for x, y in zip(a1, a2))
                out[key] = out.get(key, 0.0) + c1 * c2
        return TrigPoly(self.dim, out)

    __rmul__ = __mul__

    def conjugate(self) -> "TrigPoly":
        """Complex conjugate: coefficients conjugate, frequencies negate."""
        return TrigPoly(
            self.dim,
            {tuple(-a for a in alpha): c.conjugate() for alpha, c in self.coeffs.items()},
        )

    def prune(self, tol: float) -> "TrigPoly":
        return TrigPoly(self.dim, {a: c for a, c in self.coeffs.items() if abs(c) > tol})

    def evaluate(self, theta: Iterable[float]) -> complex:
        th = np.asarray(tuple(theta), dtype=float)
        if th.shape != (self.dim,):
            raise ValueError("theta must have one angle per axis")
        val = 0.0 + 0.0j
        for alpha, c in self.coeffs.items():
            val += c * np.exp(1j * float(np.dot(alpha, th)))
        return complex(val)

    def distance(self, other: "TrigPoly") -> float:
        return (self - other).l2_norm()

    # -- serialization ---------------------------------------------------

    def to_json_dict(self) -> dict:
        terms = [
            {"alpha": list(alpha), "re": c.real, "im": c.imag}
            for alpha, c in sorted(self.coeffs.items())
        ]
        return {"dim": self.dim, "terms": terms}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, doc: Mapping) -> "TrigPoly":
        dim = int(doc["dim"])
        coeffs: dict[MultiIndex, complex] = {}
        for term in doc["terms"]:
            alpha = _as_multi_index(term["alpha"], dim)
            coeffs[alpha] = coeffs.get(alpha, 0.0) + complex(float(term["re"]), float(term["im"]))
        return cls(dim=dim, coeffs=coeffs)

    @classmethod
    def from_json(cls, text: str) -> "TrigPoly":
        return cls.from_json_dict(json.loads(text))


@dataclass
class GridFunction:
    """Samples of a function on the uniform grid theta_k = 2 pi (k+offset)/N.

    ``samples`` is a complex array of shape (N,)*dim in C (row-major)
    order.  ``aliasing_bound`` is populated by grid-space projections: it
    is the L^2 mass discarded from frequency bins that a length-N grid
    cannot label unambiguously (any axis index at -N/2).
    """

    dim: int
    n_per_axis: int
    samples: np.ndarray
    offset: float = 0.5
    aliasing_bound: float | None = None

    def __post_init__(self) -> None:
        arr = np.asarray(self.samples, dtype=np.complex128)
        if arr.shape != (self.n_per_axis,) * self.dim:
            raise ValueError(
                f"samples shape {arr.shape} does not match (n_per_axis,)*dim "
                f"= {(self.n_per_axis,) * self.dim}"
            )
        if self.n_per_axis < 2 or self.n_per_axis % 2:
            raise ValueError("n_per_axis must be even and >= 2")
        self.samples = arr

    def with_samples(self, samples: np.ndarray, aliasing_bound: float | None = None) -> "GridFunction":
        return GridFunction(
            dim=self.dim,
            n_per_axis=self.n_per_axis,
            samples=samples,
            offset=self.offset,
            aliasing_bound=aliasing_bound,
        )

    def axis_angles(self) -> np.ndarray:
        return axis_angles(self.n_per_axis, self.offset)


def axis_angles(n_per_axis: int, offset: float = 0.5) -> np.ndarray:
    """Grid angles 2 pi (k + offset) / N along one axis."""
    return 2.0 * np.pi * (np.arange(n_per_axis) + offset) / n_per_axis


def grid_from_function(
    fn: Callable[..., np.ndarray], dim: int, n_per_axis: int, offset: float = 0.5
) -> GridFunction:
    """Sample a vectorized callable fn(theta_1, ..., theta_d) on the grid."""
    axes = np.meshgrid(*([axis_angles(n_per_axis, offset)] * dim), indexing="ij")
    vals = np.asarray(fn(*axes), dtype=np.complex128)
    return GridFunction(dim=dim, n_per_axis=n_per_axis, samples=vals, offset=offset)


# ---------------------------------------------------------------------------
# spectrum helpers (internal): fftfreq-indexed arrays with offset phases
# ---------------------------------------------------------------------------


def _int_freqs(n: int) -> np.ndarray:
    return np.fft.fftfreq(n, d=1.0 / n).astype(int)


def _freq_grids(dim: int, n: int) -> list[np.ndarray]:
    f = _int_freqs(n)
    return list(np.meshgrid(*([f] * dim), indexing="ij"))


def grid_spectrum(grid: GridFunction) -> np.ndarray:
    """Fourier coefficients indexed fftfreq-style, offset phases removed.

    For band-limited input, entry [alpha mod N] equals c_alpha exactly
    (up to rounding) for |alpha_i| <= N/2 - 1.
    """
    n = grid.n_per_axis
    spec = np.fft.fftn(grid.samples) / float(n) ** grid.dim
    if grid.offset != 0.0:
        phase = np.exp(-2j * np.pi * grid.offset * _int_freqs(n) / n)
        for ax in range(grid.dim):
            shape = [1] * grid.dim
            shape[ax] = n
            spec = spec * phase.reshape(shape)
    return spec


def grid_from_spectrum(
    spec: np.ndarray, dim: int, n: int, offset: float, aliasing_bound: float | None = None
) -> GridFunction:
    """Inverse of :func:`grid_spectrum`."""
    work = np.array(spec, dtype=np.complex128, copy=True)
    if offset != 0.0:
        phase = np.exp(2j * np.pi * offset * _int_freqs(n) / n)
        for ax in range(dim):
            shape = [1] * dim
            shape[ax] = n
            work = work * phase.reshape(shape)
    samples = np.fft.ifftn(work) * float(n) ** dim
    return GridFunction(dim=dim, n_per_axis=n, samples=samples, offset=offset, aliasing_bound=aliasing_bound)


# ---------------------------------------------------------------------------
# sampling and coefficient recovery
# ---------------------------------------------------------------------------


def sample(poly: TrigPoly, n_per_axis: int, offset: float = 0.5) -> GridFunction:
    """Evaluate a TrigPoly on the N^d grid (exact; refuses to alias).

    Requires even N with N >= 2 * (bandwidth + 1) so every stored
    frequency has an unambiguous bin.
    """
    n = int(n_per_axis)
    if n % 2 or n < 2:
        raise ValueError("n_per_axis must be even and >= 2")
    if n < 2 * (poly.bandwidth() + 1):
        raise ValueError(
            f"grid n_per_axis={n} too small for bandwidth {poly.bandwidth()}; "
            f"need at least {2 * (poly.bandwidth() + 1)}"
        )
    spec = np.zeros((n,) * poly.dim, dtype=np.complex128)
    for alpha, c in poly.coeffs.items():
        spec[tuple(a % n for a in alpha)] += c
    return grid_from_spectrum(spec, poly.dim, n, offset)


def coefficients(grid: GridFunction, cutoff: int) -> TrigPoly:
    """Recover coefficients for all |alpha_i| <= cutoff from grid samples.

    ``cutoff`` must stay below N/2: the -N/2 bin is ambiguous on an even
    grid and is never reported.  For band-limited input within the cutoff
    this inverts :func:`sample` to rounding error; for smooth
    non-polynomial input the result carries the aliased tail.
    """
    n = grid.n_per_axis
    cutoff = int(cutoff)
    if cutoff < 0:
        raise ValueError("cutoff must be >= 0")
    if cutoff >= n // 2:
        raise ValueError(f"cutoff {cutoff} must be < N/2 = {n // 2}")
    spec = grid_spectrum(grid)
    rng = range(-cutoff, cutoff + 1)
    coeffs: dict[MultiIndex, complex] = {}
    for alpha in product(rng, repeat=grid.dim):
        c = complex(spec[tuple(a % n for a in alpha)])
        if c != 0:
            coeffs[alpha] = c
    return TrigPoly(dim=grid.dim, coeffs=coeffs)


# ---------------------------------------------------------------------------
# projections
# ---------------------------------------------------------------------------


def _project_grid(grid: GridFunction, keep: Callable[[list[np.ndarray]], np.ndarray]) -> GridFunction:
    n = grid.n_per_axis
    spec = grid_spectrum(grid)
    freqs = _freq_grids(grid.dim, n)
    nyquist = np.zeros(spec.shape, dtype=bool)
    for f in freqs:
        nyquist |= f == -(n // 2)
    dropped = float(np.sqrt(np.sum(np.abs(spec[nyquist]) ** 2)))
    mask = keep(freqs) & ~nyquist
    out = np.where(mask, spec, 0.0)
    return grid_from_spectrum(out, grid.dim, n, grid.offset, aliasing_bound=dropped)


def riesz_project(x: TrigPoly | GridFunction) -> TrigPoly | GridFunction:
    """Riesz projection: keep coefficients with all frequencies >= 0.

    Exact (coefficient filtering) on TrigPoly input.  Grid input goes
    through the FFT at the grid's own resolution; the mass in ambiguous
    Nyquist bins is dropped and reported via ``aliasing_bound``.
    """
    if isinstance(x, TrigPoly):
        return TrigPoly(x.dim, {a: c for a, c in x.coeffs.items() if min(a) >= 0})
    keep = lambda freqs: np.logical_and.reduce([f >= 0 for f in freqs])
    return _project_grid(x, keep)


def riesz_project_minus(x: TrigPoly | GridFunction) -> TrigPoly | GridFunction:
    """Complementary projection onto strictly negative frequencies (d=1)."""
    if x.dim != 1:
        raise ValueError("riesz_project_minus is defined for dim=1 only")
    if isinstance(x, TrigPoly):
        return TrigPoly(1, {a: c for a, c in x.coeffs.items() if a[0] < 0})
    return _project_grid(x, lambda freqs: freqs[0] < 0)


def partial_project(poly: TrigPoly, axes: Iterable[int]) -> TrigPoly:
    """Project onto nonnegative frequencies along the given axes (1-based).

    Composing over complementary axis sets equals the full projection.
    """
    axes = sorted(set(int(a) for a in axes))
    for a in axes:
        if not 1 <= a <= poly.dim:
            raise ValueError(f"axis {a} out of range for dim={poly.dim}")
    keep = [a - 1 for a in axes]
    return TrigPoly(
        poly.dim,
        {alpha: c for alpha, c in poly.coeffs.items() if all(alpha[k] >= 0 for k in keep)},
    )


def is_homogeneous2(poly: TrigPoly, tol: float = 0.0) -> bool:
    """True when all coefficient mass sits on the line alpha_1+alpha_2 = 2.

    ``tol`` bounds the allowed off-line L^2 mass (absolute).
    """
    if poly.dim != 2:
        raise ValueError("is_homogeneous2 requires dim=2")
    off = sum(abs(c) ** 2 for alpha, c in poly.coeffs.items() if alpha[0] + alpha[1] != 2)
    return float(np.sqrt(off)) <= tol


# ---------------------------------------------------------------------------
# inner products
# ---------------------------------------------------------------------------


def grid_inner(f: GridFunction, g: GridFunction) -> complex:
    """Normalized inner product <f, g> = mean(f * conj(g)) over grid nodes."""
    if f.dim != g.dim or f.n_per_axis != g.n_per_axis or f.offset != g.offset:
        raise ValueError("grids are not compatible")
    return complex(np.mean(f.samples * np.conj(g.samples)))


def poly_inner(f: TrigPoly, g: TrigPoly) -> complex:
    """Parseval form of the normalized inner product."""
    if f.dim != g.dim:
        raise ValueError("dimension mismatch")
    small, big = (f, g) if len(f.coeffs) <= len(g.coeffs) else (g, f)
    acc = 0.0 + 0.0j
    for alpha, c in small.coeffs.items():
        other = big.coeffs.get(alpha)
        if other is not None:
            acc += (c * other.conjugate()) if small is f else (other * c.conjugate())
    return complex(acc)


# ---------------------------------------------------------------------------
# binary grid serialization
# ---------------------------------------------------------------------------


def save_grid(grid: GridFunction, path) -> None:
    """Write the 16-byte header (magic, dim, N, offset in half-cells) plus
    little-endian float64 re/im pairs in row-major order."""
    half_cells = round(grid.offset * 2)
    if abs(grid.offset * 2 - half_cells) > 0 or half_cells not in (0, 1):
        raise ValueError("binary format stores offsets of 0 or 1 half-cells only")
    header = _HEADER.pack(GRID_MAGIC, grid.dim, grid.n_per_axis, half_cells)
    data = np.ascontiguousarray(grid.samples, dtype="<c16").tobytes()
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(data)


def load_grid(path) -> GridFunction:
    with open(path, "rb") as fh:
        raw = fh.read()
    if len(raw) < _HEADER.size:
        raise ValueError("truncated grid file")
    magic, dim, n, half_cells = _HEADER.unpack_from(raw)
    if magic != GRID_MAGIC:
        raise ValueError("bad magic; not a grid dump")
    count = n**dim
    expected = _HEADER.size + 16 * count
    if len(raw) != expected:
        raise ValueError(f"grid file has {len(raw)} bytes, expected {expected}")
    flat = np.frombuffer(raw, dtype="<c16", offset=_HEADER.size, count=count)
    samples = flat.reshape((n,) * dim).astype(np.complex128)
    return GridFunction(dim=dim, n_per_axis=n, samples=samples, offset=half_cells / 2.0)
