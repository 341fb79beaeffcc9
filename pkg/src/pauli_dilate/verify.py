"""Cross-module invariant suite behind the `verify` CLI command.

Each check returns a CheckResult with the worst observed residual and the
tolerance it was held to.  Checks that take optional arguments can be
re-run against perturbed inputs, which is how the suite is exercised in
negative tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from . import channels, collisions, dilations, dynamics, linalg
from . import pauli as pauli_mod


@dataclass
class CheckResult:
    name: str
    passed: bool
    residual: float
    tol: float
    detail: str = ""


def _result(name: str, residual: float, tol: float, detail: str = "") -> CheckResult:
    return CheckResult(name, residual <= tol, float(residual), tol, detail)


def check_pauli_group_closure() -> CheckResult:
    elements = pauli_mod.pauli_group()
    table = set((p.phase, p.factors) for p in elements)
    ok = len(table) == 16
    worst = 0.0
    for a, b in product(elements, repeat=2):
        c = pauli_mod.multiply(a, b)
        if (c.phase, c.factors) not in table:
            ok = False
        worst = max(worst, linalg.frob_dist(
            pauli_mod.to_matrix(a) @ pauli_mod.to_matrix(b), pauli_mod.to_matrix(c)))
    return CheckResult("pauli-group-closure", ok and worst == 0.0, worst, 0.0)


def check_commutation_vs_matrices() -> CheckResult:
    worst = 0.0
    for a, b in product(pauli_mod.iter_strings(2), repeat=2):
        ma, mb = pauli_mod.to_matrix(a), pauli_mod.to_matrix(b)
        algebraic = pauli_mod.commutes(a, b)
        numeric = linalg.frob_dist(ma @ mb, mb @ ma) < 1e-12
        if algebraic != numeric:
            worst = 1.0
    return _result("pauli-commutation-vs-matrices", worst, 0.0)


def check_kron_and_trace_laws(rng: np.random.Generator) -> CheckResult:
    worst = 0.0
    for _ in range(5):
        a = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        b = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        c = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        worst = max(worst, linalg.frob_dist(
            linalg.kron(linalg.kron(a, b), c), linalg.kron(a, linalg.kron(b, c))))
        worst = max(worst, linalg.frob_dist(
            linalg.partial_trace_env(linalg.kron(a, b), 2, 2), a * np.trace(b)))
    return _result("kron-and-partial-trace-laws", worst, 1e-12)


def check_expm_group_law(rng: np.random.Generator) -> CheckResult:
    worst = 0.0
    for _ in range(3):
        z = rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
        h = 0.5 * (z + z.conj().T)
        t1, t2 = rng.uniform(0.1, 1.5, size=2)
        u = linalg.mat_exp_hermitian(h, t1) @ linalg.mat_exp_hermitian(h, t2)
        worst = max(worst, linalg.frob_dist(u, linalg.mat_exp_hermitian(h, t1 + t2)))
    return _result("matrix-exponential-group-law", worst, 1e-9)


def check_channel_cptp(rng: np.random.Generator, count: int = 100) -> CheckResult:
    worst = 0.0
    for _ in range(count):
        ch = channels.PauliChannel(tuple(rng.dirichlet(np.ones(4))))
        total = sum(k.conj().T @ k for k in ch.kraus_ops())
        worst = max(worst, linalg.frob_dist(total, np.eye(2)))
        worst = max(worst, max(0.0, -float(np.linalg.eigvalsh(ch.choi()).min())))
        r = rng.uniform(-1, 1, size=3)
        r *= rng.uniform(0, 1) / max(np.linalg.norm(r), 1e-12)
        out = ch.apply(channels.bloch_state(r))
        worst = max(worst, abs(float(np.trace(out).real) - 1.0))
    return _result("channel-cptp", worst, 1e-12)


def check_bloch_scaling(rng: np.random.Generator) -> CheckResult:
    worst = 0.0
    for _ in range(20):
        ch = channels.PauliChannel(tuple(rng.dirichlet(np.ones(4))))
        r = rng.uniform(-1, 1, size=3)
        r *= rng.uniform(0, 1) / max(np.linalg.norm(r), 1e-12)
        out = channels.bloch_vector(ch.apply(channels.bloch_state(r)))
        worst = max(worst, float(np.max(np.abs(out - ch.bloch_scaling() * r))))
    return _result("bloch-scaling-consistency", worst, 1e-12)


def check_semigroup_composition(rng: np.random.Generator) -> CheckResult:
    worst = 0.0
    for _ in range(10):
        lv = channels.PauliLiouvillian(tuple(rng.uniform(0, 1.5, size=3)))
        s, t = rng.uniform(0, 2, size=2)
        combined = channels.semigroup_channel(lv, s).compose(channels.semigroup_channel(lv, t))
        direct = channels.semigroup_channel(lv, s + t)
        worst = max(worst, float(np.max(np.abs(np.array(combined.p) - np.array(direct.p)))))
    return _result("semigroup-composition", worst, 1e-10)


def check_semigroup_derivative() -> CheckResult:
    lv = channels.PauliLiouvillian((0.3, 0.7, 0.2))
    rho = channels.bloch_state(np.array([0.3, -0.4, 0.5]))
    target = lv.apply(rho)

    def err(h):
        return linalg.frob_dist((channels.semigroup_channel(lv, h).apply(rho) - rho) / h, target)

    e1, e2 = err(1e-4), err(5e-5)
    ratio_ok = 0.4 <= e2 / e1 <= 0.6
    return CheckResult("semigroup-generator-derivative", e1 < 1e-3 and ratio_ok,
                       e1, 1e-3, f"ratio={e2 / e1:.3f}")


def check_isometry_closed_forms() -> CheckResult:
    worst = 0.0
    p = 0.3
    v = dilations.phase_damping_isometry(p)
    expected = np.array([
        [math.sqrt(1 - p), 0], [math.sqrt(p), 0],
        [0, math.sqrt(1 - p)], [0, -math.sqrt(p)],
    ])
    worst = max(worst, linalg.frob_dist(v.v, expected))
    q = math.sqrt(p / 3)
    r = math.sqrt(1 - p)
    vd = dilations.depolarizing_isometry(p)
    expected_dep = np.array([
        [r, 0], [0, q], [0, -1j * q], [q, 0],
        [0, r], [q, 0], [1j * q, 0], [0, -q],
    ])
    worst = max(worst, linalg.frob_dist(vd.v, expected_dep))
    return _result("isometry-closed-forms", worst, 1e-12)


def check_environment_representations() -> CheckResult:
    sys_rep = dilations.defining_pauli_rep()
    worst = 0.0
    sol = dilations.solve_env_rep(dilations.phase_damping_isometry(0.3), sys_rep)
    for g in sys_rep.labels:
        factor = g.lstrip("+-i")
        want = pauli_mod.ID2 if factor in ("I", "Z") else pauli_mod.SZ
        worst = max(worst, linalg.frob_dist(sol.rep.mats[g], want))
    sol_dep = dilations.solve_env_rep(dilations.depolarizing_isometry(0.3), sys_rep)
    expected_env = {
        "I": np.eye(4), "X": np.diag([1, 1, -1, -1]),
        "Y": np.diag([1, -1, 1, -1]), "Z": np.diag([1, -1, -1, 1]),
    }
    for g in sys_rep.labels:
        want = expected_env[g.lstrip("+-i")]
        worst = max(worst, linalg.frob_dist(sol_dep.rep.mats[g], want))
    worst = max(worst, dilations.pauli_rep_law_defect(sol.rep))
    worst = max(worst, dilations.pauli_rep_law_defect(sol_dep.rep))
    return _result("environment-representations", worst, 1e-10)


def check_generic_rep_independence(rng: np.random.Generator) -> CheckResult:
    sys_rep = dilations.defining_pauli_rep()
    reps = []
    for _ in range(3):
        p = rng.dirichlet(np.ones(4)) * 0.8 + 0.05
        p = p / p.sum()
        sol = dilations.solve_env_rep(dilations.pauli_channel_isometry(p), sys_rep)
        reps.append(sol.rep)
    worst = 0.0
    for one, two in zip(reps, reps[1:]):
        for g in sys_rep.labels:
            worst = max(worst, linalg.frob_dist(one.mats[g], two.mats[g]))
    return _result("generic-representation-p-independence", worst, 1e-10)


def check_su2_generators() -> CheckResult:
    gens = dilations.solve_su2_generators(dilations.depolarizing_isometry(0.3))
    jz = np.zeros((4, 4), dtype=complex)
    jz[1, 2] = -2j
    jz[2, 1] = 2j
    worst = linalg.frob_dist(gens.jz, jz)
    worst = max(worst, linalg.frob_dist(
        gens.jx @ gens.jy - gens.jy @ gens.jx, 2j * gens.jz))
    spectrum = np.sort(np.linalg.eigvalsh(gens.along((0.0, 0.0, 1.0))))
    worst = max(worst, float(np.max(np.abs(spectrum - np.array([-2.0, 0.0, 0.0, 2.0])))))
    return _result("su2-generators", worst, 1e-10)


def check_pauli_commutants() -> CheckResult:
    deph = pauli_mod.pauli_commutant([pauli_mod.pauli(s) for s in ("ZI", "XZ", "YZ")], 2)
    expected = [pauli_mod.pauli(s) for s in ("II", "IZ", "ZX", "ZY")]
    ok = deph == expected
    dep = pauli_mod.pauli_commutant([pauli_mod.pauli(s) for s in ("ZZZ", "XZI", "YIZ")], 3)
    ok = ok and len(dep) == 16
    ok = ok and all(pauli_mod.pauli(s) in dep for s in ("XIX", "YXI", "ZXX"))
    return CheckResult("pauli-commutants", ok, 0.0 if ok else 1.0, 0.0)


def _builders():
    return {
        "phase_damping": (dynamics.build_phase_damping_dilation(),
                          lambda t: np.array([math.cos(t) ** 2, 0, 0, math.sin(t) ** 2])),
        "depolarizing": (dynamics.build_depolarizing_dilation(),
                         lambda t: channels.PauliChannel.depolarizing(
                             math.sin(math.sqrt(3) * t) ** 2).p),
        "generic": (dynamics.build_generic_pauli_dilation(0.6, 0.5, 0.3),
                    lambda t: _generic_probs((0.6, 0.5, 0.3), t)),
    }


def _generic_probs(a, t):
    xi = sum(v * v for v in a)
    s = math.sin(math.sqrt(xi) * t) ** 2 / xi
    return np.array([1 - xi * s, a[0] ** 2 * s, a[1] ** 2 * s, a[2] ** 2 * s])


def check_builder_time_laws() -> CheckResult:
    worst = 0.0
    for pd, law in _builders().values():
        for t in dynamics.TIME_GRID:
            fit = dynamics.channel_at_time(pd, t)
            worst = max(worst, fit.leakage)
            worst = max(worst, float(np.max(np.abs(fit.probs - np.asarray(law(t))))))
    return _result("builder-time-laws", worst, 1e-10)


def _canonical_env_rep(dim_e: int) -> dilations.GroupRep:
    """Reference representation of the builder family with that environment."""
    sys_rep = dilations.defining_pauli_rep()
    if dim_e == 2:
        return dilations.solve_env_rep(dilations.phase_damping_isometry(0.3), sys_rep).rep
    if dim_e == 4:
        return dilations.solve_env_rep(dilations.depolarizing_isometry(0.3), sys_rep).rep
    raise ValueError(f"no reference representation for dim_e={dim_e}")


def check_invariant_environment_state(pd: dynamics.PhysicalDilation | None = None,
                                      t_ref: float = 0.4) -> CheckResult:
    """The initial environment state must be fixed by the symmetry.

    Checks pi_E(g) |psi_E> = |psi_E> against the canonical representation of
    the builder family, and that the representation solved from the
    dilation's own isometry agrees with it.  A perturbed initial state still
    dilates *some* channel, but breaks both conditions.
    """
    sys_rep = dilations.defining_pauli_rep()
    targets = [pd] if pd is not None else [b for b, _ in _builders().values()]
    worst = 0.0
    for target in targets:
        canonical = _canonical_env_rep(target.dim_e)
        for g in sys_rep.labels:
            worst = max(worst, float(np.linalg.norm(
                canonical.mats[g] @ target.psi_e - target.psi_e)))
        try:
            sol = dilations.solve_env_rep(dynamics.isometry_at(target, t_ref), sys_rep)
        except (linalg.ToleranceError, ValueError) as exc:
            return CheckResult("invariant-environment-state", False, math.inf, 1e-10, str(exc))
        for g in sys_rep.labels:
            worst = max(worst, linalg.frob_dist(sol.rep.mats[g], canonical.mats[g]))
            worst = max(worst, float(np.linalg.norm(
                sol.rep.mats[g] @ target.psi_e - target.psi_e)))
    return _result("invariant-environment-state", worst, 1e-10)


def check_hamiltonian_commutant_membership(pd: dynamics.PhysicalDilation | None = None,
                                           generators=None) -> CheckResult:
    """Every Pauli term of the generator must lie in the symmetry commutant."""
    cases = []
    if pd is not None:
        cases.append((pd, [pauli_mod.pauli(s) for s in generators]))
    else:
        deph_gens = [pauli_mod.pauli(s) for s in ("ZI", "XZ", "YZ")]
        dep_gens = [pauli_mod.pauli(s) for s in ("ZZZ", "XZI", "YIZ")]
        builders = _builders()
        cases.append((builders["phase_damping"][0], deph_gens))
        cases.append((builders["depolarizing"][0], dep_gens))
        cases.append((builders["generic"][0], dep_gens))
    ok = True
    for target, gens in cases:
        allowed = set(pauli_mod.pauli_commutant(gens, gens[0].n_qubits))
        terms = pauli_mod.pauli_basis_expand(target.h, tol=1e-12)
        ok = ok and all(term in allowed for term in terms)
    return CheckResult("hamiltonian-commutant-membership", ok, 0.0 if ok else 1.0, 0.0)


def check_krylov_structure() -> CheckResult:
    worst = 0.0
    dep, _ = _builders()["depolarizing"]
    k = dynamics.krylov_subspace(dep)
    ok = k.dim == 4
    p = k.projector()
    worst = max(worst, float(np.linalg.norm(dep.h @ p - p @ dep.h @ p)))
    worst = max(worst, float(np.linalg.norm(p @ dep.h - p @ dep.h @ p)))
    pd_deph, _ = _builders()["phase_damping"]
    ok = ok and dynamics.krylov_subspace(pd_deph).dim == 4
    zero = dynamics.PhysicalDilation(np.zeros((8, 8)), linalg.basis_state("11"), 2, 4)
    ok = ok and dynamics.krylov_subspace(zero).dim == 2
    return CheckResult("krylov-structure", ok and worst <= 1e-10, worst, 1e-10)


def _su2_total_generators():
    gens = dilations.solve_su2_generators(dilations.depolarizing_isometry(0.3))
    return [linalg.kron(s, np.eye(4)) + linalg.kron(np.eye(2), j)
            for s, j in zip(pauli_mod.SIGMA, (gens.jx, gens.jy, gens.jz))]


def check_restricted_su2_conservation() -> CheckResult:
    dep, _ = _builders()["depolarizing"]
    k = dynamics.krylov_subspace(dep)
    worst = max(dynamics.restricted_commutator_norm(dep, s, k)
                for s in _su2_total_generators())
    return _result("restricted-su2-conservation", worst, 1e-10)


def check_full_symmetrization() -> CheckResult:
    dep, law = _builders()["depolarizing"]
    k = dynamics.krylov_subspace(dep)
    sym = dynamics.symmetrize_full(dep, k)
    worst = 0.0
    for t in dynamics.TIME_GRID:
        fit = dynamics.channel_at_time(sym, t)
        worst = max(worst, float(np.max(np.abs(fit.probs - np.asarray(law(t))))))
    for s in _su2_total_generators():
        worst = max(worst, float(np.linalg.norm(s @ sym.h - sym.h @ s)))
    return _result("full-symmetrization", worst, 1e-9)


def check_rotating_phase_freedom() -> CheckResult:
    pd, _ = _builders()["phase_damping"]
    report = dynamics.rotating_phase_demo(pd, pauli_mod.SX)
    worst = max(report.max_prob_diff, report.max_rep_diff, report.rep_diff_at_zero)
    return _result("rotating-phase-freedom", worst, 1e-9)


def check_alternate_initial_state() -> CheckResult:
    report = dynamics.alternate_initial_state_demo()
    worst = max(report.max_leakage, report.max_prob_err, report.isometry_err,
                report.rep_diff, report.invariance_residual)
    return _result("alternate-initial-state", worst, 1e-9)


def check_strong_conservation_triviality() -> CheckResult:
    kraus = channels.PauliChannel.phase_damping(0.3).kraus_ops()
    conserved = dilations.check_strong_conservation(kraus, pauli_mod.SZ)
    sys_rep = dilations.defining_pauli_rep()
    sol = dilations.solve_env_rep(dilations.phase_damping_isometry(0.3), sys_rep)
    worst = linalg.frob_dist(sol.rep.mats["Z"], np.eye(2))
    return CheckResult("strong-conservation-triviality", conserved and worst <= 1e-10,
                       worst, 1e-10)


def check_schedule_round_trip() -> CheckResult:
    sched = dynamics.schedule_for_target(lambda t: math.sin(3 * t) ** 2, 2.0, 200)
    worst = 0.0
    for fit in dynamics.replay_schedule(sched):
        worst = max(worst, abs(fit.probs[3] - math.sin(3 * fit.t) ** 2))
    return _result("schedule-round-trip", worst, 1e-6)


def check_collision_bath_conditions() -> CheckResult:
    psi = collisions.ANCILLA_STATE
    worst = 0.0
    ops = list(collisions.BATH_OPS.values())
    for b in ops:
        worst = max(worst, abs(complex(psi.conj() @ b @ psi)))
    for i, bi in enumerate(ops):
        for j, bj in enumerate(ops):
            c = complex(psi.conj() @ bi.conj().T @ bj @ psi)
            worst = max(worst, abs(c - (1.0 if i == j else 0.0)))
    cfg = collisions.CollisionConfig((0.7, 0.5, 0.3), 1.0, 0.05, 4)
    state = channels.bloch_state(np.array([0.2, -0.3, 0.4]))
    for _ in range(cfg.n):
        state = collisions.collision_map(cfg, state)
        worst = max(worst, abs(float(np.trace(state).real) - 1.0))
        worst = max(worst, max(0.0, -float(np.linalg.eigvalsh(state).min())))
    return _result("collision-bath-conditions", worst, 1e-12)


def check_collision_convergence_trend() -> CheckResult:
    cfg = collisions.CollisionConfig((0, 0, 1), 1.0, 0.1, 10)
    entries = collisions.convergence_report(cfg, [0.1, 0.05], 1.0)
    ok = entries[1].max_error < entries[0].max_error
    return CheckResult("collision-convergence-trend", ok, entries[1].max_error,
                       entries[0].max_error, f"errors={[e.max_error for e in entries]}")


def run_all(seed: int = 1234) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    return [
        check_pauli_group_closure(),
        check_commutation_vs_matrices(),
        check_kron_and_trace_laws(rng),
        check_expm_group_law(rng),
        check_channel_cptp(rng),
        check_bloch_scaling(rng),
        check_semigroup_composition(rng),
        check_semigroup_derivative(),
        check_isometry_closed_forms(),
        check_environment_representations(),
        check_generic_rep_independence(rng),
        check_su2_generators(),
        check_pauli_commutants(),
        check_builder_time_laws(),
        check_invariant_environment_state(),
        check_hamiltonian_commutant_membership(),
        check_krylov_structure(),
        check_restricted_su2_conservation(),
        check_full_symmetrization(),
        check_rotating_phase_freedom(),
        check_alternate_initial_state(),
        check_strong_conservation_triviality(),
        check_schedule_round_trip(),
        check_collision_bath_conditions(),
        check_collision_convergence_trend(),
    ]
