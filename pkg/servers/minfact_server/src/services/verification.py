"""Named verification suites: exact identities against the oracle and loose statistical
regression guards. Every suite returns a JSON-ready report with counterexamples."""
import math
from collections import Counter
from fractions import Fraction
from itertools import permutations
from typing import Any, Callable, Dict, List, Optional

import numpy as np
from scipy import integrate, stats

from shared.config import DiagnosticThresholds, get_settings
from shared.types import BLACK, WHITE, Permutation, RangeError
from shared.types.paths import uniform_grid
from shared.utils.logger import get_logger
from shared.utils.rng import RngStream

from servers.minfact_server.src.services.dist_engine import (
    borel_pmf,
    params_for,
    solve_params,
    walk_pmf,
    walk_pmf_by_convolution,
)
from servers.minfact_server.src.services.lamination import (
    circle_points,
    hausdorff,
    is_noncrossing,
    lam_of_excursion,
    lam_of_forest,
    lam_of_partition,
    longest_chord,
)
from servers.minfact_server.src.services.levy_sim import (
    bridge_marginal_density,
    brownian_excursion_discrete,
    density_d,
    density_q,
    ig_increment,
    levy_bridge,
    levy_excursion,
)
from servers.minfact_server.src.services.ncp import enumerate_ncp, kreweras, rotate
from servers.minfact_server.src.services.oracle import (
    check_given_number_formulas,
    check_kreweras_symmetry,
    check_stationarity,
    check_walk_identities,
    count_factorizations,
    count_minfacts_of_perm,
    crossing_pairs_bruteforce,
    enumerate_trees_up_to,
    exact_conditional_tree_law,
    exact_law_partial_product,
    first_factor_formula,
    first_factor_law,
    iter_factor_tuples,
    minfact_count_formula,
    partial_product_formula,
)
from servers.minfact_server.src.services.path_codec import decode_phi, encode_phi
from servers.minfact_server.src.services.samplers import (
    forest_components,
    forest_edges,
    partial_product_partition,
    sample_conditioned_tree,
    sample_first_gap,
    sample_min_factorization,
    sample_partial_partition,
    sample_unconditioned_endpoint,
)
from servers.minfact_server.src.services.tree_duality import dual_tree, partition_of_tree

logger = get_logger(__name__)

Report = Dict[str, Any]


def _check(name: str, passed: bool, **details: Any) -> Dict[str, Any]:
    return {"name": name, "passed": bool(passed), **details}


def _report(suite: str, checks: List[Dict[str, Any]]) -> Report:
    return {"suite": suite, "passed": all(c["passed"] for c in checks), "checks": checks}


def _thresholds() -> DiagnosticThresholds:
    return get_settings().thresholds


def _total_variation(counts: Counter, law: Dict[Any, float], samples: int) -> float:
    keys = set(counts) | set(law)
    return 0.5 * sum(abs(counts.get(k, 0) / samples - float(law.get(k, 0.0))) for k in keys)


def tabulated_cdf(
    density: Callable[[np.ndarray], np.ndarray], lo: float, hi: float, points: int = 200_001
) -> Callable[[np.ndarray], np.ndarray]:
    """CDF of a density supported in [lo, hi], by cumulative trapezoids on a fine grid."""
    xs = np.linspace(lo, hi, points)
    mass = integrate.cumulative_trapezoid(np.asarray(density(xs)), xs, initial=0.0)
    return lambda v: np.interp(v, xs, mass, left=0.0, right=float(mass[-1]))


def excursion_max_cdf(x: np.ndarray, terms: int = 500) -> np.ndarray:
    """P(max of the standard Brownian excursion <= x) = 1 + 2 sum (1 - 4k^2x^2) e^(-2k^2x^2).

    Below 0.2 the probability is under e^-100 and is returned as 0.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    k2 = (np.arange(1, terms + 1) ** 2)[:, None]
    x2 = x[None, :] ** 2
    series = 1.0 + 2.0 * np.sum((1.0 - 4.0 * k2 * x2) * np.exp(-2.0 * k2 * x2), axis=0)
    return np.clip(np.where(x > 0.2, series, 0.0), 0.0, 1.0)


def suite_counts(n_max: int = 7, **_: Any) -> Report:
    """|M_n| = n^(n-2) and the factorization count of every permutation."""
    checks = []
    for n in range(1, n_max + 1):
        count = count_factorizations(n)
        expected = n ** (n - 2) if n >= 2 else 1
        checks.append(_check(f"count n={n}", count == expected, count=count, expected=expected))
    for n in range(1, min(n_max, 6) + 1):
        bad = []
        for image in permutations(range(1, n + 1)):
            sigma = Permutation(n, image)
            if count_minfacts_of_perm(sigma) != minfact_count_formula(sigma):
                bad.append(str(sigma))
        checks.append(_check(f"count per permutation n={n}", not bad, counterexamples=bad[:10]))
    return _report("counts", checks)


def suite_lawproduct(
    n_values: tuple = (4, 5, 6), samples: int = 100_000, seed: int = 0, **_: Any
) -> Report:
    """Exact law of the partial-product partition, plus the tree route against it."""
    checks = []
    for n in n_values:
        for k in range(1, n):
            law = exact_law_partial_product(n, k)
            bad = [
                {"partition": str(p), "enumerated": str(q), "formula": str(partial_product_formula(p, k))}
                for p, q in law.items()
                if q != partial_product_formula(p, k)
            ]
            missing = [
                str(p) for p in enumerate_ncp(n)
                if len(p) == n - k and p not in law
            ]
            checks.append(
                _check(f"n={n} k={k}", not bad and not missing and sum(law.values()) == 1,
                       counterexamples=bad[:10], missing=missing[:10])
            )
    if samples:
        n, K = 5, 2
        exact = {p: float(q) for p, q in exact_law_partial_product(n, K).items()}
        rng = RngStream(seed)
        counts = Counter(sample_partial_partition(n, K, rng, route="tree") for _ in range(samples))
        tv = _total_variation(counts, exact, samples)
        checks.append(_check("tree route n=5 K=2", tv < _thresholds().total_variation, tv=tv))
    return _report("lawproduct", checks)


def suite_marginals(
    n_stationary: int = 6,
    n_first: int = 7,
    borel_n: int = 10_000,
    samples: int = 100_000,
    seed: int = 0,
    **_: Any,
) -> Report:
    """Stationarity, the first-factor law, the Borel limit and uniformity over M_5."""
    thresholds = _thresholds()
    checks = []
    for n in range(2, n_stationary + 1):
        witness = check_stationarity(n)
        checks.append(_check(f"stationarity n={n}", witness is None,
                             counterexample=None if witness is None else str(witness)))
    for n in range(2, n_first + 1):
        bad = [
            {"factor": str(t), "enumerated": str(q), "formula": str(first_factor_formula(n, t.a, t.b))}
            for t, q in first_factor_law(n).items()
            if q != first_factor_formula(n, t.a, t.b)
        ]
        checks.append(_check(f"first factor n={n}", not bad, counterexamples=bad[:10]))
    if samples:
        rng = RngStream(seed)
        gaps = np.asarray(sample_first_gap(borel_n, rng, size=samples))
        i = np.arange(1, 6)
        empirical = np.array([np.mean(gaps == v) for v in i])
        gap = float(np.max(np.abs(empirical - borel_pmf(i))))
        checks.append(_check("borel limit", gap <= thresholds.borel_gap, max_gap=gap))

        support = {f: 0 for f in iter_factor_tuples(5)}
        for _ in range(samples):
            f = sample_min_factorization(5, rng)
            support[tuple((t.a, t.b) for t in f.factors)] += 1
        p_value = float(stats.chisquare(list(support.values())).pvalue)
        checks.append(_check("uniform over M_5", p_value >= thresholds.chi2_p_floor, p_value=p_value))
    return _report("marginals", checks)


def suite_symmetry(n_max: int = 6, rotation_n_max: int = 8, **_: Any) -> Report:
    """Kreweras symmetry of the partial-product laws, and the square of the complement."""
    checks = []
    for n in range(3, n_max + 1):
        for k in range(1, n - 1):
            witness = check_kreweras_symmetry(n, k)
            checks.append(_check(f"complement law n={n} k={k}", witness is None,
                                 counterexample=None if witness is None else str(witness)))
    for n in range(1, rotation_n_max + 1):
        bad = [str(p) for p in enumerate_ncp(n) if kreweras(kreweras(p)) != rotate(p, -1)]
        checks.append(_check(f"complement squared n={n}", not bad, counterexamples=bad[:10]))
    return _report("symmetry", checks)


def suite_bijections(n_max: int = 8, tree_vertices: int = 9, **_: Any) -> Report:
    """Dual tree and (H, W) code round trips."""
    checks = []
    for n in range(1, n_max + 1):
        partitions = enumerate_ncp(n)
        bad = [str(p) for p in partitions if partition_of_tree(dual_tree(p)) != p]
        checks.append(_check(f"dual tree n={n}", not bad, cases=len(partitions), counterexamples=bad[:10]))
    for color in (BLACK, WHITE):
        trees = enumerate_trees_up_to(tree_vertices, color)
        bad = [list(t.parents) for t in trees if decode_phi(encode_phi(t), color) != t]
        checks.append(_check(f"phi code {color} root", not bad, cases=len(trees), counterexamples=bad[:10]))
    return _report("bijections", checks)


def suite_bgw_formulas(
    bound: int = 6, samples: int = 100_000, seed: int = 0, **_: Any
) -> Report:
    """Given-number formulas, walk identities, the walk pmf oracle and the tree sampler."""
    thresholds = _thresholds()
    black, white = params_for(9, 3)
    checks = []
    given = check_given_number_formulas(black, white, tolerance=thresholds.given_number)
    checks.append(_check("given-number formulas", given["passed"], report=given))
    walks = check_walk_identities(black, white, bound=bound, tolerance=thresholds.given_number)
    checks.append(_check("walk identities", walks["passed"], report=walks))

    worst = 0.0
    for params in (black, white, solve_params(0.3), solve_params(4.0)):
        for N in range(1, 7):
            direct = walk_pmf_by_convolution(N, 10, params)
            closed = walk_pmf(N, np.arange(11), params)
            worst = max(worst, float(np.max(np.abs(closed - direct) / direct)))
    checks.append(_check("walk pmf oracle", worst <= thresholds.walk_oracle, max_relative_error=worst))

    if samples:
        n, K = 4, 2
        b, w = params_for(n, K)
        exact = exact_conditional_tree_law(n, K, b, w)
        rng = RngStream(seed)
        counts = Counter(sample_conditioned_tree(n, K, False, rng, params=(b, w)) for _ in range(samples))
        tv = _total_variation(counts, exact, samples)
        checks.append(_check("conditioned tree n=4 K=2", tv < thresholds.total_variation, tv=tv))
        exact = exact_conditional_tree_law(n, K, b, w, root_shifted=True)
        counts = Counter(sample_conditioned_tree(n, K, True, rng, params=(b, w)) for _ in range(samples))
        tv = _total_variation(counts, exact, samples)
        checks.append(_check("root-shifted tree n=4 K=2", tv < thresholds.total_variation, tv=tv))
    return _report("bgw-formulas", checks)


def local_limit_gaps(n: int, K: int) -> Dict[str, float]:
    """sup_k |D P(S_N = k) - density(k / D)| for the black walk (Gaussian) and the white
    walk (the inverse Gaussian shape q_1)."""
    black, white = params_for(n, K)
    c = K / math.sqrt(n)
    out: Dict[str, float] = {}
    for label, N in (("black_half", int(math.ceil(n / 2))), ("black_full", n - K)):
        D = math.sqrt(N * black.variance)
        mean = N * (K + 1) / (n - K)
        k = np.arange(0, int(mean + 20 * D) + 1)
        out[label] = float(np.max(np.abs(D * walk_pmf(N, k, black) - stats.norm.pdf((k - mean) / D))))
    D = math.sqrt(white.variance * K)
    k = np.arange(0, int(40 * D) + 1)
    out["white"] = float(np.max(np.abs(D * walk_pmf(K, k, white) - density_q(1.0, k / D, c))))
    return out


def suite_llt_diagnostic(
    n: int = 10_000,
    c: float = 1.0,
    samples: int = 10_000,
    increment_draws: int = 100_000,
    bridge_samples: int = 10_000,
    bridge_c: float = 5.0,
    excursion_samples: int = 5_000,
    excursion_n: int = 20_000,
    seed: int = 0,
    **_: Any,
) -> Report:
    """Local limit gaps, densities of the Levy layer, the scaling of the free walk and the
    laws of sampled increments, bridges and Brownian excursion maxima."""
    thresholds = _thresholds()
    K = min(max(int(math.floor(c * math.sqrt(n))), 1), n - 1)
    c_eff = K / math.sqrt(n)
    checks = []
    gaps = local_limit_gaps(n, K)
    checks.append(_check("local limit", max(gaps.values()) <= thresholds.local_limit, **gaps))

    mass_d = integrate.quad(lambda x: density_d(1.0, x, c_eff), -c_eff, np.inf, limit=200)[0]
    mass_q = integrate.quad(lambda x: density_q(0.5, x, c_eff), 0.0, np.inf, limit=200)[0]
    checks.append(_check(
        "densities integrate to one",
        abs(mass_d - 1) <= thresholds.normalisation and abs(mass_q - 1) <= thresholds.normalisation,
        mass_d=mass_d, mass_q=mass_q,
    ))
    worst = 0.0
    for u in (0.25, 0.5, 0.75):
        r = 1.0 - u
        x = np.linspace(-0.99 * c_eff * r, 5.0, 401)
        worst = max(worst, float(np.max(np.abs(density_q(r, x + c_eff * r, c_eff) - density_d(r, x, c_eff)))))
    checks.append(_check("shifted densities agree", worst <= thresholds.identity, max_error=worst))

    if samples:
        rng = RngStream(seed)
        dt = 0.25
        draws = np.asarray(ig_increment(dt, c_eff, rng, size=100 * samples))
        relative = abs(float(draws.mean()) / (c_eff * dt) - 1.0)
        checks.append(_check("increment mean", relative <= thresholds.ig_mean_relative, relative_error=relative))

        _, white = params_for(n, K)
        scale = math.sqrt(white.variance * K)
        values = sample_unconditioned_endpoint(n, K, rng, samples) / scale
        law = stats.invgauss(1.0 / c_eff**2, scale=c_eff**3)
        ks = float(stats.kstest(values + c_eff, law.cdf).statistic)
        checks.append(_check("free walk at u=1", ks <= thresholds.ks_scaling, ks=ks))

    increment_rng, bridge_rng, excursion_rng = RngStream(seed).spawn(3)
    if increment_draws:
        values = np.asarray(ig_increment(1.0, c_eff, increment_rng, size=increment_draws)) - c_eff
        cdf = tabulated_cdf(lambda x: density_d(1.0, x, c_eff), -c_eff, float(values.max()) + 1.0)
        ks = float(stats.kstest(values, cdf).statistic)
        checks.append(_check("increment law at t=1", ks <= thresholds.ks_increment, ks=ks))

    if bridge_samples:
        u = 0.5
        grid = np.array([0.0, u, 1.0])
        values = np.array([
            levy_bridge(grid, bridge_c, bridge_rng, mode="rejection").values[1] for _ in range(bridge_samples)
        ])
        cdf = tabulated_cdf(lambda x: bridge_marginal_density(u, x, bridge_c), -bridge_c * u, bridge_c * (1 - u))
        ks = float(stats.kstest(values, cdf).statistic)
        checks.append(_check("rejection bridge at u=1/2", ks <= thresholds.ks_bridge, ks=ks, c=bridge_c))

    if excursion_samples:
        maxima = np.array([
            float(brownian_excursion_discrete(excursion_n, excursion_rng).values.max())
            for _ in range(excursion_samples)
        ])
        ks = float(stats.kstest(maxima, excursion_max_cdf).statistic)
        checks.append(_check("brownian excursion maximum", ks <= thresholds.ks_scaling, ks=ks, n=excursion_n))
    return _report("llt-diagnostic", checks)


def _random_prefix(rng: RngStream, n_max: int) -> tuple:
    n = rng.integers(2, n_max)
    f = sample_min_factorization(n, rng)
    return f, rng.integers(1, n - 1)


def suite_hausdorff(
    n: int = 10_000,
    seeds: int = 200,
    hausdorff_seeds: int = 50,
    laminations: int = 1000,
    lamination_n_max: int = 64,
    excursions: int = 1000,
    seed: int = 0,
    **_: Any,
) -> Report:
    """Non-crossing and circle checks on random laminations and on laminations of
    conditioned-tree excursions, plus the chord-length and distance regression guards
    at large n."""
    thresholds = _thresholds()
    rng = RngStream(seed)
    checks = []

    failures = []
    for _ in range(laminations):
        f, k = _random_prefix(rng, lamination_n_max)
        edges = forest_edges(f, k)
        partition = partial_product_partition(f, k)
        forest = lam_of_forest(f.n, edges)
        polygons = lam_of_partition(partition)
        raw = [(Fraction(t.a, f.n), Fraction(t.b % f.n, f.n)) for t in edges]
        problems = []
        if crossing_pairs_bruteforce(raw):
            problems.append("forest chords cross")
        if crossing_pairs_bruteforce([(c.s, c.t) for c in polygons.chords]):
            problems.append("partition chords cross")
        if circle_points(forest) != circle_points(polygons):
            problems.append("circle points differ")
        if forest_components(f.n, edges) != partition:
            problems.append("components differ from cycles")
        if problems:
            failures.append({"factorization": f.to_dict(), "k": k, "problems": problems})
    checks.append(_check("random laminations", not failures, cases=laminations, counterexamples=failures[:5]))

    failures = []
    for index in range(excursions):
        size = rng.integers(4, max(lamination_n_max, 4))
        path = levy_excursion(uniform_grid(size + 1), 1.0, rng, n=size, root_shifted=bool(index % 2))
        lam = lam_of_excursion(path)
        if not is_noncrossing(lam) or lam.n != size:
            failures.append({"n": size, "tree": path.tree.to_dict(), "labels": lam.n})
    checks.append(_check("excursion laminations", not failures, cases=excursions, counterexamples=failures[:5]))

    if seeds:
        small = max(int(math.floor(math.sqrt(n) / math.log(n))), 1)
        big = min(int(math.floor(5 * math.sqrt(n))), n - 1)
        medians = {}
        for label, K in (("small", small), ("big", big)):
            lengths = [
                longest_chord(lam_of_partition(sample_partial_partition(n, K, stream, route="tree")))
                for stream in rng.spawn(seeds)
            ]
            medians[label] = float(np.median(lengths))
        checks.append(_check("longest chord grows with K", medians["small"] < medians["big"],
                             K=[small, big], medians=medians))
    if hausdorff_seeds:
        K = min(int(math.floor(5 * math.sqrt(n))), n - 1)
        delta = get_settings().hausdorff_delta
        distances = []
        for stream in rng.spawn(hausdorff_seeds):
            f = sample_min_factorization(n, stream)
            distances.append(hausdorff(
                lam_of_forest(n, forest_edges(f, K)), lam_of_partition(partial_product_partition(f, K)), delta
            ))
        median = float(np.median(distances))
        checks.append(_check("forest and partition laminations close", median < thresholds.hausdorff_median,
                             K=K, median=median))
    return _report("hausdorff", checks)


SUITES: Dict[str, Callable[..., Report]] = {
    "counts": suite_counts,
    "lawproduct": suite_lawproduct,
    "marginals": suite_marginals,
    "symmetry": suite_symmetry,
    "bijections": suite_bijections,
    "bgw-formulas": suite_bgw_formulas,
    "llt-diagnostic": suite_llt_diagnostic,
    "hausdorff": suite_hausdorff,
}


def run_suite(name: str, **options: Any) -> Report:
    """Run one suite; unknown names raise RangeError."""
    if name not in SUITES:
        raise RangeError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    logger.info("verify", suite=name, options={k: v for k, v in options.items() if v is not None})
    report = SUITES[name](**{k: v for k, v in options.items() if v is not None})
    logger.info("verify_done", suite=name, passed=report["passed"])
    return report


def failed_checks(report: Report) -> List[str]:
    return [c["name"] for c in report["checks"] if not c["passed"]]


def suite_names() -> List[str]:
    return list(SUITES)


def run_all(names: Optional[List[str]] = None, **options: Any) -> List[Report]:
    return [run_suite(name, **options) for name in (names or suite_names())]
