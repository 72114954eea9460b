from typing import Any, Dict, Optional

from servers.minfact_server.src.services.verification import failed_checks, run_suite
from servers.minfact_server.src.tools.common import error_result


async def verify_suite(suite: str, options: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    """
    Run one named verification suite.

    Args:
        suite: counts, lawproduct, marginals, symmetry, bijections, bgw-formulas,
            llt-diagnostic or hausdorff
        options: Keyword overrides for the suite (sizes, sample counts, seed)

    Returns:
        The suite report: pass/fail per check with counterexamples
    """
    try:
        report = run_suite(suite, **(options or {}))
        report["failed"] = failed_checks(report)
        return report
    except Exception as e:
        return error_result("verify_suite", e, suite=suite, passed=False)
