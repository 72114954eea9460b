# Verification suite tests
import numpy as np
import pytest
import sys
import os

# Add the project root to Python path
sys.path.append(os.path.join(os.path.dirname(__file__), '../../../..'))

from servers.minfact_server.src.services.verification import (
    excursion_max_cdf,
    failed_checks,
    local_limit_gaps,
    run_all,
    run_suite,
    suite_names,
    tabulated_cdf,
)
from shared.types import RangeError


class TestSuiteRegistry:
    """Test cases for suite lookup."""

    def test_suite_names(self):
        """Every suite is registered under its command-line name."""
        assert set(suite_names()) == {
            "counts", "lawproduct", "marginals", "symmetry",
            "bijections", "bgw-formulas", "llt-diagnostic", "hausdorff",
        }

    def test_unknown_suite(self):
        """Unknown names raise a range error."""
        with pytest.raises(RangeError):
            run_suite("everything")

    def test_failed_checks(self):
        """Only failing check names are listed."""
        report = {"suite": "x", "passed": False, "checks": [
            {"name": "a", "passed": True},
            {"name": "b", "passed": False},
        ]}

        assert failed_checks(report) == ["b"]


class TestExactSuites:
    """Test cases for the suites backed by exhaustive enumeration."""

    def test_counts(self):
        """Counts up to n=5 agree with their formulas."""
        report = run_suite("counts", n_max=5)

        assert report["suite"] == "counts"
        assert report["passed"], failed_checks(report)
        assert len(report["checks"]) == 10

    def test_none_options_are_ignored(self):
        """Unset options fall back to the suite defaults."""
        report = run_suite("counts", n_max=4, seed=None)

        assert report["passed"]

    def test_lawproduct_without_sampling(self):
        """Enumerated partial-product laws match the closed form."""
        report = run_suite("lawproduct", n_values=(4, 5), samples=0)

        assert report["passed"], failed_checks(report)
        assert len(report["checks"]) == 3 + 4

    def test_marginals_without_sampling(self):
        """Stationarity and first-factor laws hold."""
        report = run_suite("marginals", n_stationary=4, n_first=5, samples=0)

        assert report["passed"], failed_checks(report)

    def test_symmetry(self):
        """Complement laws and the square of the complement."""
        report = run_suite("symmetry", n_max=5, rotation_n_max=5)

        assert report["passed"], failed_checks(report)

    def test_bijections(self):
        """Dual trees and offspring codes round-trip."""
        report = run_suite("bijections", n_max=5, tree_vertices=6)

        assert report["passed"], failed_checks(report)
        assert [c["name"] for c in report["checks"]][-2:] == ["phi code black root", "phi code white root"]

    def test_random_laminations(self):
        """Forest and partition laminations of random prefixes agree on the circle, and
        excursion laminations of conditioned trees do not cross."""
        report = run_suite("hausdorff", seeds=0, hausdorff_seeds=0, laminations=50, lamination_n_max=12,
                           excursions=50)

        assert report["passed"], report["checks"]

    def test_run_all_subset(self):
        """run_all keeps the requested order."""
        reports = run_all(["symmetry", "counts"], n_max=4, rotation_n_max=4)

        assert [r["suite"] for r in reports] == ["symmetry", "counts"]

    @pytest.mark.slow
    def test_bgw_formulas_without_sampling(self):
        """Given-number formulas, walk identities and the walk oracle."""
        report = run_suite("bgw-formulas", bound=3, samples=0)

        assert report["passed"], failed_checks(report)


class TestDiagnostics:
    """Test cases for the local limit diagnostics."""

    def test_local_limit_gaps_shape(self):
        """One sup-distance per rescaled walk."""
        gaps = local_limit_gaps(400, 20)

        assert set(gaps) == {"black_half", "black_full", "white"}
        assert all(0.0 <= g < float("inf") for g in gaps.values())

    def test_excursion_max_cdf(self):
        """The maximum of the excursion has mean sqrt(pi/2)."""
        x = np.linspace(0.0, 6.0, 6001)
        cdf = excursion_max_cdf(x)
        mean = float((np.sum(1.0 - cdf) - 0.5) * (x[1] - x[0]))

        assert cdf[0] == 0.0
        assert cdf[-1] == pytest.approx(1.0)
        assert np.all(np.diff(cdf) >= -1e-12)
        assert mean == pytest.approx((np.pi / 2) ** 0.5, rel=1e-3)

    def test_tabulated_cdf(self):
        """Cumulative trapezoids of the uniform density on [0, 2]."""
        cdf = tabulated_cdf(lambda x: np.full_like(x, 0.5), 0.0, 2.0, points=101)

        assert cdf(np.array([-1.0, 0.5, 1.0, 3.0])).tolist() == pytest.approx([0.0, 0.25, 0.5, 1.0])


class TestStatisticalSuites:
    """Full-size runs of the sampling suites."""

    @pytest.mark.slow
    def test_llt_diagnostic(self):
        """Local limits, increment and bridge laws, and the Brownian excursion maximum."""
        report = run_suite("llt-diagnostic")

        assert report["passed"], failed_checks(report)
        assert {
            "local limit",
            "free walk at u=1",
            "increment law at t=1",
            "rejection bridge at u=1/2",
            "brownian excursion maximum",
        } <= {c["name"] for c in report["checks"]}

    @pytest.mark.slow
    def test_hausdorff(self):
        """Random laminations, excursion laminations and the large-n regression guards."""
        report = run_suite("hausdorff")

        assert report["passed"], failed_checks(report)
        excursions = next(c for c in report["checks"] if c["name"] == "excursion laminations")
        assert excursions["cases"] == 1000

    @pytest.mark.slow
    def test_marginals(self):
        """Stationarity, first-factor law, Borel limit and uniformity at default sizes."""
        report = run_suite("marginals")

        assert report["passed"], failed_checks(report)

    @pytest.mark.slow
    def test_bgw_formulas(self):
        """Walk identities up to bound 6 and both conditioned tree samplers."""
        report = run_suite("bgw-formulas")

        assert report["passed"], failed_checks(report)
        assert "root-shifted tree n=4 K=2" in {c["name"] for c in report["checks"]}
