"""Unit-vector samples on S^(d-1) and reproducible uniform sampling."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np

NORM_TOL = 1e-8


@dataclass(frozen=True)
class SeedSpec:
    """Seed for one replication stream.

    ``domain`` is an optional tuple of non-negative integers that namespaces
    the stream, e.g. one simulation cell. Streams with equal
    ``(master_seed, domain, stream_index)`` are bit-identical; any other
    combination gives an independent stream.
    """

    master_seed: int
    stream_index: int = 0
    domain: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.stream_index < 0:
            raise ValueError("stream_index must be >= 0")
        if any(k < 0 for k in self.domain):
            raise ValueError("domain entries must be >= 0")

    def generator(self) -> np.random.Generator:
        # Philox is counter-based; the SeedSequence hash keys it so that
        # streams do not depend on the order they are created in.
        ss = np.random.SeedSequence(
            self.master_seed & (2**64 - 1),
            spawn_key=(*self.domain, self.stream_index),
        )
        return np.random.Generator(np.random.Philox(ss))


SeedLike = Union[SeedSpec, int, np.random.Generator, None]


def as_generator(seed: SeedLike) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    if isinstance(seed, SeedSpec):
        return seed.generator()
    if seed is None:
        return np.random.default_rng()
    return SeedSpec(int(seed)).generator()


class UnitSample:
    """An ``n x d`` array of points on the unit sphere.

    Parameters
    ----------
    points : array_like, shape (n, d)
        Observations, one per row.
    renormalize : bool
        If True, rows are rescaled to unit norm. Otherwise every row must
        already have norm within ``1e-8`` of one.
    """

    __slots__ = ("_points",)

    def __init__(self, points, renormalize: bool = False):
        x = np.array(points, dtype=float, copy=True)
        if x.ndim == 1:
            x = x[None, :]
        if x.ndim != 2:
            raise ValueError(f"expected a 2-d array, got shape {x.shape}")
        n, d = x.shape
        if n < 1:
            raise ValueError("sample must contain at least one point")
        if d < 2:
            raise ValueError("dimension must be at least 2")
        if not np.all(np.isfinite(x)):
            raise ValueError("sample contains non-finite coordinates")
        norms = np.linalg.norm(x, axis=1)
        if renormalize:
            if np.any(norms == 0):
                raise ValueError("cannot renormalize a zero vector")
            x /= norms[:, None]
        else:
            bad = np.flatnonzero(np.abs(norms - 1.0) > NORM_TOL)
            if bad.size:
                raise ValueError(
                    f"row {bad[0]} has norm {norms[bad[0]]!r}; "
                    "pass renormalize=True to rescale"
                )
        x.setflags(write=False)
        self._points = x

    @property
    def points(self) -> np.ndarray:
        return self._points

    @property
    def size_n(self) -> int:
        return self._points.shape[0]

    @property
    def dim_d(self) -> int:
        return self._points.shape[1]

    def __len__(self) -> int:
        return self.size_n

    def __repr__(self) -> str:
        return f"UnitSample(n={self.size_n}, d={self.dim_d})"

    def rotate(self, Q: np.ndarray) -> "UnitSample":
        """Apply an orthogonal matrix to every point."""
        return UnitSample(self._points @ np.asarray(Q).T, renormalize=True)

    @classmethod
    def _trusted(cls, x: np.ndarray) -> "UnitSample":
        # internal fast path for arrays already normalized by a sampler
        obj = cls.__new__(cls)
        x.setflags(write=False)
        obj._points = x
        return obj


def as_sample(data) -> UnitSample:
    if isinstance(data, UnitSample):
        return data
    return UnitSample(data)


def sample_uniform_sphere(n: int, d: int, seed: SeedLike = None) -> UnitSample:
    """Draw ``n`` iid uniform points on S^(d-1) by normalizing Gaussians."""
    if int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    if int(d) != d or d < 2:
        raise ValueError(f"d must be an integer >= 2, got {d!r}")
    rng = as_generator(seed)
    return UnitSample._trusted(_uniform_rows(rng, int(n), int(d)))


def _uniform_rows(rng: np.random.Generator, n: int, d: int) -> np.ndarray:
    z = rng.standard_normal((n, d))
    norms = np.linalg.norm(z, axis=1)
    # a Gaussian row of exact zeros has probability zero; redraw defensively
    while np.any(norms == 0):
        idx = norms == 0
        z[idx] = rng.standard_normal((int(idx.sum()), d))
        norms = np.linalg.norm(z, axis=1)
    return z / norms[:, None]


def gram_cosines(sample) -> np.ndarray:
    """All pairwise cosines ``x_i . x_j``, clamped to [-1, 1]."""
    x = as_sample(sample).points
    G = x @ x.T
    G = 0.5 * (G + G.T)
    np.fill_diagonal(G, 1.0)
    return np.clip(G, -1.0, 1.0, out=G)


def random_rotation(d: int, seed: SeedLike = None) -> np.ndarray:
    """Haar-distributed orthogonal ``d x d`` matrix."""
    rng = as_generator(seed)
    A = rng.standard_normal((d, d))
    Q, R = np.linalg.qr(A)
    return Q * np.sign(np.diag(R))


def load_sample(path: Union[str, Path], renormalize: bool = False) -> UnitSample:
    """Read a text file of observations.

    One observation per line, coordinates separated by whitespace or
    commas. Blank lines and lines starting with ``#`` are skipped.
    """
    path = Path(path)
    rows = []
    with path.open() as fh:
        for lineno, line in enumerate(fh, 1):
            s = line.strip()
            if not s or s.startswith("#"):
                continue
            try:
                rows.append([float(v) for v in s.replace(",", " ").split()])
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from None
            if len(rows[-1]) != len(rows[0]):
                raise ValueError(
                    f"{path}:{lineno}: expected {len(rows[0])} coordinates, "
                    f"got {len(rows[-1])}"
                )
    if not rows:
        raise ValueError(f"{path}: no observations")
    return UnitSample(np.array(rows), renormalize=renormalize)
