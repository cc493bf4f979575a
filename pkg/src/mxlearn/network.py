"""MIMO multiple-access channel model: rates, gradients, interference matrices.

The receiver has N antennas and unit-covariance noise; user k transmits
through an N x m_k channel H_k with power P_k and a unit-trace PSD input
covariance Q_k. The sum rate is

    R(Q) = log det ( I_N + sum_k P_k H_k Q_k H_k^H )

in nats. Covariance profiles are plain lists of (m_k, m_k) complex arrays.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, InvalidConfig
from .hermitian import eig_hermitian, hermitize, logdet_psd, tangent_project


@dataclass(frozen=True)
class ChannelRealization:
    """A static multi-user MIMO uplink: channels H_k and powers P_k."""

    num_users: int
    rx_antennas: int
    tx_antennas: tuple       # m_k per user, each >= 2
    channels: tuple          # per user: (N, m_k) complex ndarray
    powers: tuple            # P_k per user, linear scale

    @property
    def dims(self):
        """Per-user sphere dimensions d_k = m_k^2 - 1."""
        return tuple(m * m - 1 for m in self.tx_antennas)


@dataclass
class GradientProfile:
    """Per-user Euclidean sum-rate gradients and their traceless projections."""

    full: list = field(default_factory=list)       # G_k = P_k H_k^H W^{-1} H_k
    traceless: list = field(default_factory=list)  # G_k - (tr G_k / m_k) I


def generate_channels(num_users, rx_antennas, antennas, powers=None, scale=1.0,
                      rng_seed=0) -> ChannelRealization:
    """Draw i.i.d. circularly-symmetric complex Gaussian channels.

    Each complex entry of H_k has mean 0 and variance scale^2. Deterministic
    given rng_seed (numpy PCG64 stream).
    """
    if num_users < 1:
        raise InvalidConfig("num_users must be >= 1")
    if rx_antennas < 1:
        raise InvalidConfig("rx_antennas must be >= 1")
    antennas = list(antennas)
    if len(antennas) != num_users:
        raise InvalidConfig("antennas list length must equal num_users")
    if any(m < 2 for m in antennas):
        raise InvalidConfig("every transmitter needs at least two antennas")
    if powers is None:
        powers = [1.0] * num_users
    powers = [float(p) for p in powers]
    if len(powers) != num_users or any(p <= 0 for p in powers):
        raise InvalidConfig("powers must be positive, one per user")
    if not scale > 0:
        raise InvalidConfig("scale must be > 0")

    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(rng_seed)))
    chans = []
    for m in antennas:
        re = rng.standard_normal((rx_antennas, m))
        im = rng.standard_normal((rx_antennas, m))
        chans.append((re + 1j * im) * (scale / np.sqrt(2.0)))
    return ChannelRealization(
        num_users=num_users,
        rx_antennas=rx_antennas,
        tx_antennas=tuple(antennas),
        channels=tuple(chans),
        powers=tuple(powers),
    )


def uniform_profile(ch: ChannelRealization) -> list:
    """The prox-center profile Q_k = I / m_k (the algorithms' starting point)."""
    return [np.eye(m, dtype=complex) / m for m in ch.tx_antennas]


def _check_profile_dims(profile, ch):
    if len(profile) != ch.num_users:
        raise DimensionMismatch(
            f"profile has {len(profile)} blocks, channel has {ch.num_users} users"
        )
    for k, (q, m) in enumerate(zip(profile, ch.tx_antennas)):
        if q.shape != (m, m):
            raise DimensionMismatch(f"user {k}: Q has shape {q.shape}, expected ({m}, {m})")


def validate_profile(profile, ch, trace_tol=1e-10, eig_tol=1e-10) -> None:
    """Assert the covariance-profile invariants: unit trace, PSD up to tolerance."""
    _check_profile_dims(profile, ch)
    for k, q in enumerate(profile):
        tr = np.trace(q).real
        if abs(tr - 1.0) > trace_tol:
            raise InvalidConfig(f"user {k}: trace {tr} deviates from 1")
        w = np.linalg.eigvalsh(hermitize(q))
        if w[0] < -eig_tol:
            raise InvalidConfig(f"user {k}: min eigenvalue {w[0]:.3e} below -{eig_tol}")


def aggregate_covariance(profile, ch: ChannelRealization) -> np.ndarray:
    """Signal-plus-noise covariance W = I_N + sum_k P_k H_k Q_k H_k^H."""
    _check_profile_dims(profile, ch)
    w = np.eye(ch.rx_antennas, dtype=complex)
    for q, h, p in zip(profile, ch.channels, ch.powers):
        w += p * (h @ q @ h.conj().T)
    return hermitize(w)


def sum_rate(profile, ch: ChannelRealization) -> float:
    """Achievable sum rate R(Q) = log det W(Q), in nats."""
    return logdet_psd(aggregate_covariance(profile, ch))


def individual_rate(k, profile, ch: ChannelRealization) -> float:
    """Rate of user k under single-user decoding: R(Q) - R(Q with Q_k = 0)."""
    if not 0 <= k < ch.num_users:
        raise DimensionMismatch(f"user index {k} out of range")
    zeroed = list(profile)
    zeroed[k] = np.zeros_like(profile[k])
    return sum_rate(profile, ch) - sum_rate(zeroed, ch)


def rate_gradient(profile, ch: ChannelRealization) -> GradientProfile:
    """Per-user gradients G_k = P_k H_k^H W^{-1} H_k of the sum rate."""
    w = aggregate_covariance(profile, ch)
    ew, eu = eig_hermitian(w)
    w_inv = hermitize((eu / ew) @ eu.conj().T)
    out = GradientProfile()
    for h, p in zip(ch.channels, ch.powers):
        g = hermitize(p * (h.conj().T @ w_inv @ h))
        out.full.append(g)
        out.traceless.append(tangent_project(g))
    return out


def mui_matrix(k, profile, ch: ChannelRealization) -> np.ndarray:
    """Interference-plus-noise covariance seen by user k (user k excluded)."""
    _check_profile_dims(profile, ch)
    if not 0 <= k < ch.num_users:
        raise DimensionMismatch(f"user index {k} out of range")
    w = np.eye(ch.rx_antennas, dtype=complex)
    for j, (q, h, p) in enumerate(zip(profile, ch.channels, ch.powers)):
        if j != k:
            w += p * (h @ q @ h.conj().T)
    return hermitize(w)


def effective_channel(k, profile, ch: ChannelRealization) -> np.ndarray:
    """Channel of user k whitened by its interference: W_k^{-1/2} H_k."""
    wk = mui_matrix(k, profile, ch)
    ew, eu = eig_hermitian(wk)
    bound = 1e-14 * max(abs(ew[0]), abs(ew[-1]))
    if ew[0] <= bound:
        # cannot occur for W_k = I + PSD, guarded anyway
        raise InvalidConfig(f"interference matrix of user {k} is singular")
    inv_sqrt = (eu / np.sqrt(ew)) @ eu.conj().T
    return inv_sqrt @ ch.channels[k]
