"""Physical dilations driven by time-independent Hamiltonians.

A physical dilation is a Hermitian generator H on system (x) environment
plus a pure environment state |psi_E>.  Evolving for time t and tracing out
the environment yields a channel; for the builders in this module that
channel is an exact Pauli channel at every time, and the induced probability
laws are closed-form trigonometric functions of t.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .channels import PauliChannel, probs_from_scaling
from .dilations import Isometry, channel_of_isometry, defining_pauli_rep, solve_env_rep
from .linalg import (
    DEFAULT_TOL,
    as_complex_matrix,
    basis_state,
    frob_dist,
    hermiticity_defect,
    kron,
    mat_exp_hermitian,
    partial_trace_env,
)
from .pauli import ID2, SIGMA, pauli, to_matrix

# fixed verification grid for time sweeps
TIME_GRID = np.linspace(0.0, 2.0 * np.pi, 25)


@dataclass(frozen=True)
class PhysicalDilation:
    h: np.ndarray
    psi_e: np.ndarray
    dim_s: int
    dim_e: int

    def __post_init__(self):
        h = as_complex_matrix(self.h)
        psi = np.asarray(self.psi_e, dtype=np.complex128).reshape(-1)
        d = self.dim_s * self.dim_e
        if h.shape != (d, d):
            raise ValueError(f"Hamiltonian shape {h.shape} does not match dims")
        if hermiticity_defect(h) > 1e-12:
            raise ValueError("Hamiltonian is not Hermitian within 1e-12")
        if psi.shape != (self.dim_e,):
            raise ValueError("environment state dimension mismatch")
        if abs(np.linalg.norm(psi) - 1.0) > 1e-12:
            raise ValueError("environment state is not normalized")
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "psi_e", psi)

    def embed(self) -> np.ndarray:
        """The (dim_s*dim_e) x dim_s injection |phi> -> |phi> (x) |psi_E>."""
        return kron(np.eye(self.dim_s), self.psi_e.reshape(-1, 1))


@dataclass(frozen=True)
class KrylovSubspace:
    basis: np.ndarray  # orthonormal columns
    dim: int

    def projector(self) -> np.ndarray:
        return self.basis @ self.basis.conj().T


@dataclass(frozen=True)
class Schedule:
    """Piecewise-constant coupling f(t); knots are (segment start, value)."""

    knots: tuple[tuple[float, float], ...]
    t_final: float

    def __post_init__(self):
        times = [t for t, _ in self.knots]
        if not times or times[0] != 0.0:
            raise ValueError("schedule must start at t = 0")
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValueError("knot times must increase strictly")
        if self.t_final <= times[-1]:
            raise ValueError("final time must exceed the last knot")
        object.__setattr__(self, "knots", tuple((float(t), float(f)) for t, f in self.knots))


@dataclass
class ChannelFit:
    """Pauli fit of the channel induced by a dilation at one time."""

    t: float
    isometry: Isometry
    transfer: np.ndarray     # 4x4 Pauli transfer matrix
    probs: np.ndarray        # fitted (pI, px, py, pz), unclamped
    lam: np.ndarray          # fitted Bloch scalings
    leakage: float           # norm of the non-Pauli part of the transfer

    def apply(self, rho) -> np.ndarray:
        return channel_of_isometry(self.isometry, rho)

    def pauli_channel(self) -> PauliChannel:
        return PauliChannel(tuple(self.probs))


_PAULI_BASIS = (ID2,) + SIGMA


def fit_pauli_transfer(v: Isometry) -> ChannelFit:
    """Project the induced map onto the Pauli transfer matrix.

    The probabilities invert the Bloch-scaling relation; the leakage is the
    Frobenius norm of everything the diagonal Pauli model cannot carry.
    """
    r = np.zeros((4, 4), dtype=np.complex128)
    for a, s_in in enumerate(_PAULI_BASIS):
        out = partial_trace_env(v.v @ s_in @ v.v.conj().T, v.dim_s, v.dim_e)
        for b, s_out in enumerate(_PAULI_BASIS):
            r[b, a] = np.trace(s_out @ out) / 2.0
    lam = np.real(np.diag(r)[1:])
    model = np.diag(np.concatenate(([1.0], lam))).astype(np.complex128)
    leakage = float(np.linalg.norm(r - model))
    return ChannelFit(t=math.nan, isometry=v, transfer=r,
                      probs=probs_from_scaling(lam), lam=lam, leakage=leakage)


def isometry_at(pd: PhysicalDilation, t: float) -> Isometry:
    u = mat_exp_hermitian(pd.h, t)
    return Isometry(u @ pd.embed(), pd.dim_s, pd.dim_e)


def channel_at_time(pd: PhysicalDilation, t: float) -> ChannelFit:
    """Evolve for time t, trace out the environment, fit a Pauli channel."""
    if t < 0:
        raise ValueError("time must be nonnegative")
    fit = fit_pauli_transfer(isometry_at(pd, t))
    fit.t = float(t)
    return fit


def _string_hamiltonian(terms: Sequence[tuple[str, float]]) -> np.ndarray:
    mats = []
    for label, coeff in terms:
        p = pauli(label)
        if p.phase not in (1, -1):
            raise ValueError("Hamiltonian strings must carry a real phase")
        mats.append(float(coeff) * to_matrix(p))
    return sum(mats)


def build_phase_damping_dilation() -> PhysicalDilation:
    """H = Z (x) X with the environment qubit in |1>; p(t) = sin^2(t)."""
    h = _string_hamiltonian([("ZX", 1.0)])
    return PhysicalDilation(h, basis_state("1"), 2, 2)


def build_depolarizing_dilation() -> PhysicalDilation:
    """H = XIX + YXI + ZXX on three qubits with |psi_E> = |11>."""
    return build_generic_pauli_dilation(1.0, 1.0, 1.0)


def build_generic_pauli_dilation(a1: float, a2: float, a3: float) -> PhysicalDilation:
    """Weighted generator a1 XIX + a2 YXI + a3 ZXX with |psi_E> = |11>.

    With xi = a1^2 + a2^2 + a3^2 the induced channel has
    p_i(t) = a_i^2 sin^2(sqrt(xi) t) / xi.
    """
    h = _string_hamiltonian([("XIX", a1), ("YXI", a2), ("ZXX", a3)])
    return PhysicalDilation(h, basis_state("11"), 2, 4)


def dilation_from_descriptor(desc: dict) -> PhysicalDilation:
    """Build a dilation from its JSON descriptor.

    Supported forms:
      {"builder": "phase_damping" | "depolarizing"}
      {"builder": "generic", "a": [a1, a2, a3]}
      {"hamiltonian": [["ZX", 1.0], ...], "psiE": "1"}
    """
    if not isinstance(desc, dict):
        raise ValueError("dilation descriptor must be an object")
    if "builder" in desc:
        name = desc["builder"]
        if name == "phase_damping":
            return build_phase_damping_dilation()
        if name == "depolarizing":
            return build_depolarizing_dilation()
        if name == "generic":
            a = desc.get("a")
            if not isinstance(a, Sequence) or len(a) != 3:
                raise ValueError("'generic' builder needs \"a\": [a1, a2, a3]")
            return build_generic_pauli_dilation(*(float(v) for v in a))
        raise ValueError(f"unknown builder {name!r}")
    if "hamiltonian" in desc:
        terms = desc["hamiltonian"]
        if not terms:
            raise ValueError("empty Hamiltonian")
        labels = [t[0] for t in terms]
        n = len(labels[0])
        if any(len(l) != n for l in labels):
            raise ValueError("Hamiltonian strings must share one length")
        psi_label = desc.get("psiE")
        if not isinstance(psi_label, str) or len(psi_label) != n - 1:
            raise ValueError("psiE label must cover the environment qubits")
        h = _string_hamiltonian([(l, float(c)) for l, c in terms])
        return PhysicalDilation(h, basis_state(psi_label), 2, 2 ** (n - 1))
    raise ValueError("dilation descriptor needs 'builder' or 'hamiltonian'")


def krylov_subspace(pd: PhysicalDilation, tol: float = DEFAULT_TOL) -> KrylovSubspace:
    """Orthonormal basis of span{H^k (|phi_j> (x) |psi_E>)}.

    Seeds run over the system basis; powers of H are applied until the rank
    saturates.  Gram-Schmidt with one reorthogonalization pass.
    """
    dim = pd.dim_s * pd.dim_e
    basis: list[np.ndarray] = []

    def add(vec: np.ndarray) -> bool:
        w = vec.astype(np.complex128)
        for _ in range(2):
            for b in basis:
                w = w - b * (b.conj() @ w)
        norm = np.linalg.norm(w)
        if norm <= tol:
            return False
        basis.append(w / norm)
        return True

    frontier = []
    for col in pd.embed().T:
        if add(col):
            frontier.append(basis[-1])
    while frontier and len(basis) < dim:
        next_frontier = []
        for vec in frontier:
            if add(pd.h @ vec):
                next_frontier.append(basis[-1])
        frontier = next_frontier
    return KrylovSubspace(np.column_stack(basis), len(basis))


def restricted_commutator_norm(pd: PhysicalDilation, sym, k: KrylovSubspace) -> float:
    """|| P [sym, H] P ||_F with P the projector onto the subspace."""
    s = as_complex_matrix(sym)
    p = k.projector()
    comm = s @ pd.h - pd.h @ s
    return float(np.linalg.norm(p @ comm @ p))


def symmetrize_full(pd: PhysicalDilation, k: KrylovSubspace,
                    tol: float = DEFAULT_TOL) -> PhysicalDilation:
    """Replace H by its block on the subspace plus the identity elsewhere.

    The subspace must be invariant under H; the induced channel is unchanged
    because the dynamics never leaves the subspace.
    """
    p = k.projector()
    invariance = np.linalg.norm(pd.h @ p - p @ (pd.h @ p))
    if invariance > tol:
        raise ValueError(f"subspace is not invariant under H (defect {invariance:.3e})")
    d = pd.dim_s * pd.dim_e
    h2 = p @ pd.h @ p + (np.eye(d) - p)
    h2 = 0.5 * (h2 + h2.conj().T)
    return PhysicalDilation(h2, pd.psi_e, pd.dim_s, pd.dim_e)


def schedule_for_target(p_target: Callable[[float], float], t_final: float,
                        steps: int) -> Schedule:
    """Piecewise-constant coupling reproducing a target probability curve.

    The accumulated phase Theta(t) solves cos(2 Theta) = 1 - 2 p(t); the
    arccos branch is unwrapped by continuity so p may pass through 0 and 1.
    """
    if steps < 1:
        raise ValueError("need at least one step")
    if t_final <= 0:
        raise ValueError("final time must be positive")
    times = np.linspace(0.0, t_final, steps + 1)
    values = np.array([float(p_target(t)) for t in times])
    if abs(values[0]) > 1e-9:
        raise ValueError("target probability must start at 0")
    if values.min() < -1e-9 or values.max() > 1 + 1e-9:
        raise ValueError("target probability must stay within [0, 1]")
    # the sampled p fixes the phase 2*Theta only up to reflection, so the
    # branch is chosen by trend continuation (linear prediction), which keeps
    # the coupling smooth through p = 0 and p = 1
    phases = [0.0]
    for val in values[1:]:
        c = math.acos(min(1.0, max(-1.0, 1.0 - 2.0 * val)))
        prev = phases[-1]
        pred = 2 * phases[-1] - phases[-2] if len(phases) >= 2 else prev
        m0 = round(prev / (2 * math.pi))
        candidates = [2 * math.pi * m + sign * c
                      for m in (m0 - 1, m0, m0 + 1) for sign in (1, -1)]
        best = min(candidates, key=lambda x: (abs(x - pred), -x))
        phases.append(best)
    thetas = [ph / 2.0 for ph in phases]
    dt = times[1] - times[0]
    knots = tuple((float(times[i]), float((thetas[i + 1] - thetas[i]) / dt))
                  for i in range(steps))
    return Schedule(knots, float(t_final))


def replay_schedule(sched: Schedule,
                    pd: PhysicalDilation | None = None) -> list[ChannelFit]:
    """Evolve segment by segment and fit the channel at each segment end.

    The base generator defaults to the phase damping dilation; segment k
    contributes exp(-i f_k H dt_k), multiplied in order.
    """
    if pd is None:
        pd = build_phase_damping_dilation()
    boundaries = [t for t, _ in sched.knots[1:]] + [sched.t_final]
    u = np.eye(pd.dim_s * pd.dim_e, dtype=np.complex128)
    fits = []
    for (t_start, f), t_end in zip(sched.knots, boundaries):
        u = mat_exp_hermitian(f * pd.h, t_end - t_start) @ u
        fit = fit_pauli_transfer(Isometry(u @ pd.embed(), pd.dim_s, pd.dim_e))
        fit.t = t_end
        fits.append(fit)
    return fits


@dataclass
class RotatingPhaseReport:
    """Differences observed after adding a commuting free environment term."""

    max_prob_diff: float
    max_rep_diff: float
    rep_diff_at_zero: float


def rotating_phase_demo(pd: PhysicalDilation, h_env,
                        prob_times: Sequence[float] = tuple(TIME_GRID),
                        rep_times: Sequence[float] = (0.4, 0.7, 1.3)) -> RotatingPhaseReport:
    """Add I (x) h_env to the generator and measure what changes.

    The channel must be untouched, and the solved environment representation
    of the rotated dilation must equal the conjugation of the static one by
    exp(-i h_env t).  Rejects h_env that fails to commute with H.
    """
    he = as_complex_matrix(h_env)
    lifted = kron(np.eye(pd.dim_s), he)
    if np.linalg.norm(pd.h @ lifted - lifted @ pd.h) > 1e-12:
        raise ValueError("free environment term must commute with the generator")
    rotated = PhysicalDilation(pd.h + lifted, pd.psi_e, pd.dim_s, pd.dim_e)

    max_prob = 0.0
    for t in prob_times:
        base = channel_at_time(pd, t)
        rot = channel_at_time(rotated, t)
        max_prob = max(max_prob, float(np.max(np.abs(base.probs - rot.probs))))

    sys_rep = defining_pauli_rep()
    base_rep = solve_env_rep(isometry_at(pd, rep_times[0]), sys_rep).rep
    max_rep = 0.0
    for t in rep_times:
        rot_rep = solve_env_rep(isometry_at(rotated, t), sys_rep).rep
        w = mat_exp_hermitian(he, t)
        for g in sys_rep.labels:
            expected = w @ base_rep.mats[g] @ w.conj().T
            max_rep = max(max_rep, frob_dist(rot_rep.mats[g], expected))
    w0 = mat_exp_hermitian(he, 0.0)
    at_zero = max(frob_dist(w0 @ base_rep.mats[g] @ w0.conj().T, base_rep.mats[g])
                  for g in sys_rep.labels)
    return RotatingPhaseReport(max_prob, max_rep, at_zero)


@dataclass
class AlternateStateReport:
    """Phase damping dilation restarted from |0> instead of |1>."""

    max_leakage: float
    max_prob_err: float
    isometry_err: float
    rep_diff: float
    invariance_residual: float


def alternate_initial_state_demo(times: Sequence[float] = (0.4, 0.7, 1.3)) -> AlternateStateReport:
    """Run H = Z (x) X from |psi_E> = |0> and verify the induced structure.

    The channel stays phase damping with p = sin^2(t); the environment
    representation flips sign on the x and y sectors and leaves |0> fixed.
    """
    pd = PhysicalDilation(_string_hamiltonian([("ZX", 1.0)]), basis_state("0"), 2, 2)
    sz = to_matrix(pauli("Z"))
    expected_rep = {}
    for g in defining_pauli_rep().labels:
        factor = g.lstrip("+-i")
        expected_rep[g] = ID2 if factor in ("I", "Z") else -sz

    max_leak = 0.0
    max_prob = 0.0
    iso_err = 0.0
    for t in times:
        fit = channel_at_time(pd, t)
        max_leak = max(max_leak, fit.leakage)
        want = np.array([math.cos(t) ** 2, 0.0, 0.0, math.sin(t) ** 2])
        max_prob = max(max_prob, float(np.max(np.abs(fit.probs - want))))
        vt = np.array([
            [-1j * math.sin(t), 0],
            [math.cos(t), 0],
            [0, 1j * math.sin(t)],
            [0, math.cos(t)],
        ])
        iso_err = max(iso_err, frob_dist(fit.isometry.v, vt))

    sys_rep = defining_pauli_rep()
    sol = solve_env_rep(isometry_at(pd, times[0]), sys_rep)
    rep_diff = max(frob_dist(sol.rep.mats[g], expected_rep[g]) for g in sys_rep.labels)
    psi = pd.psi_e
    invariance = max(float(np.linalg.norm(sol.rep.mats[g] @ psi - psi))
                     for g in sys_rep.labels)
    return AlternateStateReport(max_leak, max_prob, iso_err, rep_diff, invariance)
