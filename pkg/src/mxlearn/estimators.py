"""Single-scalar-feedback gradient estimation.

A query direction Z is drawn uniformly from the unit Frobenius sphere of the
d-dimensional real vector space of traceless Hermitian m x m matrices,
d = m^2 - 1. The transmit point is pulled toward the prox-center I/m before
the shift delta * Z is applied, which keeps every query inside the unit-trace
PSD spectrahedron for delta below the feasibility radius

    r(m) = 1 / sqrt(m (m - 1)).

From the single observed scalar rate the gradient estimate is
(d / delta) * rate * Z, or (d / delta) * (rate - offset) * Z when the
previous observation is replayed as an offset.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInput, QueryRadiusTooLarge
from .hermitian import hermitize
from .network import ChannelRealization, rate_gradient, uniform_profile

_BASIS_CACHE: dict = {}


def sphere_dimension(m: int) -> int:
    """Dimension d = m^2 - 1 of the traceless Hermitian space."""
    return m * m - 1


def feasibility_radius(m: int) -> float:
    """Largest Frobenius ball around I/m inside the spectrahedron."""
    return 1.0 / np.sqrt(m * (m - 1))


def traceless_basis(m: int) -> np.ndarray:
    """Orthonormal basis of the traceless Hermitian m x m matrices, (d, m, m).

    m - 1 normalized diagonal generators followed by paired real/imaginary
    off-diagonal generators. Cached per m.
    """
    if m < 2:
        raise InvalidInput("need m >= 2")
    if m in _BASIS_CACHE:
        return _BASIS_CACHE[m]
    mats = []
    for l in range(1, m):
        d = np.zeros((m, m), dtype=complex)
        d[np.arange(l), np.arange(l)] = 1.0
        d[l, l] = -l
        mats.append(d / np.sqrt(l * (l + 1)))
    for i in range(m):
        for j in range(i + 1, m):
            e = np.zeros((m, m), dtype=complex)
            e[i, j] = e[j, i] = 1.0 / np.sqrt(2.0)
            mats.append(e)
            e = np.zeros((m, m), dtype=complex)
            e[i, j] = -1j / np.sqrt(2.0)
            e[j, i] = 1j / np.sqrt(2.0)
            mats.append(e)
    basis = np.stack(mats)
    _BASIS_CACHE[m] = basis
    return basis


def sample_traceless_sphere(m: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform draw from the unit sphere of traceless Hermitian matrices."""
    basis = traceless_basis(m)
    c = rng.standard_normal(basis.shape[0])
    c /= np.linalg.norm(c)
    return np.tensordot(c, basis, axes=1)


def sample_traceless_sphere_many(m: int, n: int, rng: np.random.Generator) -> np.ndarray:
    """n independent sphere draws at once, (n, m, m). Same law as the scalar sampler."""
    basis = traceless_basis(m)
    c = rng.standard_normal((n, basis.shape[0]))
    c /= np.linalg.norm(c, axis=1, keepdims=True)
    return np.tensordot(c, basis, axes=([1], [0]))


def safety_perturb(q, delta: float, z) -> np.ndarray:
    """Feasibility-preserving query point Q + (delta/r)(I/m - Q) + delta Z.

    Requires 0 <= delta < r(m); the output has unit trace and stays PSD for
    any feasible Q and any unit sphere direction Z.
    """
    q = np.asarray(q, dtype=complex)
    m = q.shape[0]
    r = feasibility_radius(m)
    if delta < 0 or delta >= r:
        raise QueryRadiusTooLarge(f"delta {delta} outside [0, {r:.6f})")
    if delta == 0:
        return q.copy()
    center = np.eye(m, dtype=complex) / m
    return q + (delta / r) * (center - q) + delta * np.asarray(z)


def spsa_estimate(observed_rate: float, delta: float, z) -> np.ndarray:
    """One-shot estimate (d / delta) * rate * Z from a single rate observation."""
    if delta <= 0:
        raise InvalidInput("delta must be > 0")
    z = np.asarray(z)
    d = sphere_dimension(z.shape[0])
    return (d / delta) * observed_rate * z


def spsa_plus_estimate(observed_rate: float, offset: float, delta: float, z) -> np.ndarray:
    """Offset-corrected estimate (d / delta) * (rate - offset) * Z.

    The offset is the previously observed rate; it is independent of Z, so the
    estimator keeps the same mean while its magnitude stays bounded by the
    rate increment between consecutive queries.
    """
    if delta <= 0:
        raise InvalidInput("delta must be > 0")
    z = np.asarray(z)
    d = sphere_dimension(z.shape[0])
    return (d / delta) * (observed_rate - offset) * z


@dataclass(frozen=True)
class ConstantEstimates:
    """Empirical lower bounds for the smoothness constants of the sum rate.

    lipschitz          L:  |R(Q) - R(Q')| <= L ||Q - Q'||_nuclear
    cross (K, K)       Lambda_{k,k'}: spectral-norm Lipschitz moduli of grad_k R
                       in Q_{k'} (Frobenius metric)
    per_user (K,)      row means Lambda_bar_k
    overall            grand mean lambda
    All are maxima over finite samples, hence lower bounds of the true constants.
    """

    lipschitz: float
    cross: np.ndarray
    per_user: np.ndarray
    overall: float


def _random_feasible(m, rng):
    # mixture of interior points and near-rank-one vertices, where the
    # gradient field is most extreme
    a = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
    q = a @ a.conj().T
    if rng.random() < 0.3:
        v = rng.standard_normal(m) + 1j * rng.standard_normal(m)
        q = 0.02 * q + np.outer(v, v.conj())
    q = hermitize(q)
    return q / np.trace(q).real


def estimate_constants(ch: ChannelRealization, num_samples: int,
                       rng: np.random.Generator) -> ConstantEstimates:
    """Sample-based estimates of the rate's Lipschitz constants.

    For each sampled feasible profile the gradient's dual (spectral) norm
    lower-bounds L; pairs of profiles differing in one user's block
    lower-bound the cross constants Lambda_{k,k'}. Estimates are
    non-decreasing in num_samples for a fixed generator state.
    """
    if num_samples < 100:
        raise InvalidInput("need num_samples >= 100")
    kk = ch.num_users
    lip = 0.0
    cross = np.zeros((kk, kk))
    for _ in range(num_samples):
        prof = [_random_feasible(m, rng) for m in ch.tx_antennas]
        grad = rate_gradient(prof, ch)
        lip = max(lip, max(np.linalg.norm(g, 2) for g in grad.full))
        # one randomly perturbed user per sample keeps the cost linear in K
        j = int(rng.integers(kk))
        prof2 = list(prof)
        prof2[j] = _random_feasible(ch.tx_antennas[j], rng)
        dq = np.linalg.norm(prof2[j] - prof[j])
        if dq > 1e-12:
            grad2 = rate_gradient(prof2, ch)
            for k in range(kk):
                dg = np.linalg.norm(grad2.full[k] - grad.full[k], 2)
                cross[k, j] = max(cross[k, j], dg / dq)
    # the starting profile is always in the sample set
    g0 = rate_gradient(uniform_profile(ch), ch)
    lip = max(lip, max(np.linalg.norm(g, 2) for g in g0.full))
    per_user = cross.mean(axis=1)
    return ConstantEstimates(
        lipschitz=float(lip),
        cross=cross,
        per_user=per_user,
        overall=float(per_user.mean()),
    )
