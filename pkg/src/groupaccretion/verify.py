"""Cross-check the fast scorers and evaluation against the brute-force oracles."""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from . import oracles
from .candidates import CandidatePool, actual_events, enumerate_ia, enumerate_sa, global_metrics, rank_global
from .corpus import AccretionIndex
from .errors import InputError
from .gks import compute_katz, score_group_gks
from .birw import build_alignment_problem, birw_seq, score_group_brws
from .glps import GlpsParams, build_propagation_operator, label_vector, propagate, residual
from .pipeline import MethodParams, TrainingView, score_groups

TOL = 1e-10


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


def check_limits(view: TrainingView) -> None:
    if view.n == 0:
        raise InputError("nothing to verify: the training period has no groups")
    if view.n > oracles.WALK_MAX_VERTICES:
        raise InputError(f"verification needs at most {oracles.WALK_MAX_VERTICES} training actors "
                         f"(walk oracle) and {oracles.DENSE_MAX_VERTICES} for the dense solve; "
                         f"this split has {view.n}")


def run_checks(view: TrainingView, params: MethodParams = MethodParams(), mutate: bool = False,
               n_top: int = 50) -> list[Check]:
    """Every oracle comparison on a small training view.

    ``mutate`` perturbs the scorer parameters (not the oracles) so the
    checks are expected to fail; it is a negative control.
    """
    check_limits(view)
    snap = view.snapshot
    a = snap.adjacency.toarray()
    scorer_params = replace(params, beta=params.beta * 1.01) if mutate else params
    checks = []

    expected_a = np.array(oracles.adjacency_oracle(snap.groups, snap.n))
    checks.append(Check("adjacency", bool((a == expected_a).all())))

    k = compute_katz(snap, scorer_params.katz()).toarray()
    k_ref = np.array(oracles.katz_oracle(a, params.beta, params.max_length))
    checks.append(Check("katz", bool(np.allclose(k, k_ref, rtol=0, atol=TOL)), f"max diff {np.abs(k - k_ref).max():.3g}"))

    worst = 0.0
    katz = compute_katz(snap, scorer_params.katz())
    for g in snap.groups:
        got = score_group_gks(snap, katz, g).as_dict()
        ref = oracles.gks_oracle(a, g, params.beta, params.max_length)
        worst = max([worst] + [abs(got[j] - ref[j]) for j in ref])
    checks.append(Check("gks", worst <= TOL, f"max diff {worst:.3g}"))

    worst = 0.0
    for g in snap.groups:
        problem = build_alignment_problem(snap, g)
        if problem.degenerate:
            continue
        got = score_group_brws(birw_seq(problem, scorer_params.birw()), problem).as_dict()
        ref = oracles.birw_oracle(a, g, params.alpha, params.l_group, params.l_outer)
        worst = max([worst] + [abs(got[j] - ref[j]) for j in ref])
    checks.append(Check("brws", worst <= TOL, f"max diff {worst:.3g}"))

    theta = build_propagation_operator(snap)
    t_ref = np.array(oracles.theta_oracle(snap.groups, snap.n))
    checks.append(Check("theta", bool(np.allclose(theta.toarray(), t_ref, rtol=0, atol=TOL))))

    worst = worst_res = 0.0
    for g in snap.groups:
        for mu in (params.mu, params.mu_per_group):
            gp = GlpsParams(mu, "closed", 1e-12)
            y = label_vector(snap.n, g)
            ref = np.array(oracles.dense_solve_oracle(t_ref, y, gp.alpha))
            for solver in ("closed", "iterative"):
                f = propagate(theta, g, replace(gp, solver=solver, mu=mu * (1.01 if mutate else 1))).values
                worst = max(worst, float(np.abs(f - ref).max()))
                worst_res = max(worst_res, residual(theta, f, y, gp.alpha))
    checks.append(Check("glps", worst <= 1e-9, f"max diff {worst:.3g}, residual {worst_res:.3g}"))

    index = AccretionIndex(view.train_groups)
    mismatches = 0
    for t in view.test_groups:
        fast = (index.is_ig(t), index.is_sg(t))
        if fast != oracles.accretion_oracle(view.train_groups, t):
            mismatches += 1
    checks.append(Check("accretion", mismatches == 0, f"{mismatches} mismatching test groups"))

    test_local = view.local_test_groups()
    for method in ("gks", "brws", "glps"):
        scores = list(score_groups(snap, method, scorer_params))
        for mode in ("ia", "sa"):
            pool = CandidatePool(snap.groups, snap.n, mode, n_top)
            cands = []
            for s in scores:
                pool.add(s)
                cands.extend(enumerate_ia(s) if mode == "ia" else enumerate_sa(s))
            fast = pool.ranked()
            slow = rank_global(cands, n_top, mode)
            same = [(c.key, c.score) for c in fast.entries] == [(c.key, c.score) for c in slow.entries]
            checks.append(Check(f"ranking-{method}-{mode}", same))

            hits = oracles.exhaustive_match_oracle(fast.keys(), test_local)
            n_actual, _ = actual_events(snap.groups, test_local, mode)
            precision, _ = global_metrics(fast.keys(), n_top, test_local, n_actual)
            checks.append(Check(f"matching-{method}-{mode}", precision == len(hits) / n_top))

    return checks
