"""Fast-collision simulation of Pauli dynamical semigroups.

Each collision couples the system qubit to a fresh two-qubit ancilla in
|11> through H_c = nu sum_i a_i sigma_i (x) B_i with bath operators
B_x = I (x) X, B_y = X (x) I, B_z = X (x) X.  The bath expectation values
vanish in |11> and <B_i B_j> = delta_ij, so n collisions of duration dt
with nu = sqrt(zeta / dt) converge to the Pauli semigroup with rates
gamma_i = zeta a_i^2 as dt -> 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .channels import (
    PauliLiouvillian,
    bloch_state,
    bloch_vector,
    semigroup_channel,
    validate_density_matrix,
)
from .linalg import basis_state, kron, mat_exp_hermitian, partial_trace_env, trace_distance
from .pauli import ID2, SX, SY, SZ

BATH_OPS = {
    "x": kron(ID2, SX),
    "y": kron(SX, ID2),
    "z": kron(SX, SX),
}
ANCILLA_STATE = basis_state("11")


@dataclass(frozen=True)
class CollisionConfig:
    """Lindblad weights a, rate scale zeta, collision duration dt, count n.

    The interaction strength is nu = sqrt(zeta / dt), so nu^2 dt = zeta
    holds exactly at any dt.
    """

    a: tuple[float, float, float]
    zeta: float
    dt: float
    n: int

    def __post_init__(self):
        a = tuple(float(v) for v in self.a)
        if len(a) != 3:
            raise ValueError("need 3 Lindblad weights")
        if self.zeta < 0:
            raise ValueError("zeta must be nonnegative")
        if self.dt <= 0:
            raise ValueError("collision duration must be positive")
        if self.n < 1:
            raise ValueError("need at least one collision")
        object.__setattr__(self, "a", a)

    @property
    def nu(self) -> float:
        return math.sqrt(self.zeta / self.dt)

    def rates(self) -> np.ndarray:
        """Target semigroup rates gamma_i = zeta a_i^2."""
        return self.zeta * np.asarray(self.a, dtype=float) ** 2


def collision_hamiltonian(a: Sequence[float], nu: float = 1.0) -> np.ndarray:
    a1, a2, a3 = (float(v) for v in a)
    return nu * (a1 * kron(SX, BATH_OPS["x"])
                 + a2 * kron(SY, BATH_OPS["y"])
                 + a3 * kron(SZ, BATH_OPS["z"]))


def collision_unitary(cfg: CollisionConfig) -> np.ndarray:
    return mat_exp_hermitian(collision_hamiltonian(cfg.a, cfg.nu), cfg.dt)


def _collision_step(u: np.ndarray, rho: np.ndarray) -> np.ndarray:
    ancilla = np.outer(ANCILLA_STATE, ANCILLA_STATE.conj())
    return partial_trace_env(u @ kron(rho, ancilla) @ u.conj().T, 2, 4)


def collision_map(cfg: CollisionConfig, rho) -> np.ndarray:
    """One exact collision: Tr_E[U (rho (x) |11><11|) U+]."""
    a = validate_density_matrix(rho)
    return _collision_step(collision_unitary(cfg), a)


def simulate_semigroup(cfg: CollisionConfig, rho0) -> list[np.ndarray]:
    """States after 0..n collisions with a fresh ancilla each step."""
    state = validate_density_matrix(rho0)
    u = collision_unitary(cfg)
    trajectory = [state]
    for _ in range(cfg.n):
        state = _collision_step(u, state)
        trajectory.append(state)
    return trajectory


@dataclass
class ConvergenceEntry:
    dt: float
    errors: list[tuple[float, float]]  # (t, trace distance to exact semigroup)

    @property
    def max_error(self) -> float:
        return max(err for _, err in self.errors)


def convergence_report(cfg: CollisionConfig, dts: Sequence[float], t_final: float,
                       rho0=None) -> list[ConvergenceEntry]:
    """Trajectory error against the exact semigroup for each dt.

    The reference is the closed-form Pauli semigroup with rates
    gamma_i = zeta a_i^2 applied to rho0 at every collision time.
    """
    if rho0 is None:
        rho0 = bloch_state(np.array([1.0, 1.0, 1.0]) / math.sqrt(3))
    rho0 = validate_density_matrix(rho0)
    lv = PauliLiouvillian(tuple(cfg.rates()))
    entries = []
    for dt in dts:
        n = int(round(t_final / dt))
        run = replace(cfg, dt=float(dt), n=n)
        trajectory = simulate_semigroup(run, rho0)
        errors = []
        for k, state in enumerate(trajectory):
            t = k * dt
            exact = semigroup_channel(lv, t).apply(rho0)
            errors.append((t, trace_distance(state, exact)))
        entries.append(ConvergenceEntry(float(dt), errors))
    return entries


def fit_decay_rates(cfg: CollisionConfig) -> np.ndarray:
    """Recover gamma_i from log-linear decay of the Bloch components.

    Simulates from r0 = (1,1,1)/sqrt(3), fits the slope of log r_i(t), and
    inverts slope_i = -2 sum_{j != i} gamma_j.
    """
    r0 = np.array([1.0, 1.0, 1.0]) / math.sqrt(3)
    trajectory = simulate_semigroup(cfg, bloch_state(r0))
    times = cfg.dt * np.arange(len(trajectory))
    slopes = np.empty(3)
    for i in range(3):
        series = np.array([bloch_vector(state)[i] / r0[i] for state in trajectory])
        if series.min() <= 0:
            raise ValueError("Bloch component crossed zero; cannot fit a decay rate")
        slopes[i] = np.polyfit(times, np.log(series), 1)[0]
    u = -slopes / 2.0
    return u.sum() / 2.0 - u
