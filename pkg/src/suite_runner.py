"""Run acceptance suites and check their outcomes."""
import logging
import math
from typing import Any, Callable, Dict, List, Optional

import numpy as np

from .banach_mazur import corollary1_lower, known_distance, sandwich_report, theorem2_cotype_lower
from .combinatorics import SubsetRatioInput, random_sweep, verify_lemma1
from .constants import khinchine_constants
from .distributions import SymmetricAtoms, random_step_law, rademacher
from .errors import KhinchineError, PreconditionError
from .functional import (
    VectorTuple,
    check_argument_norm_axioms,
    check_barycenter_reduction,
    check_level_monotonicity,
    check_p_monotonicity,
    check_value_norm_axioms,
    ipf_exact,
    ipf_monte_carlo,
    ipf_two_valued_exact,
    l2_closed_form,
    verify_theorem1,
)
from .hanner import HannerMode, falsify_hanner, hanner_gap, hlawka_check, hlawka_search
from .norms import NormSpec
from .run_config import RunConfig
from .seeding import seeded_rng
from .spec_parser import parse_exponent
from .suite_loader import Suite
from .tolerance import Slack

logger = logging.getLogger(__name__)


class CheckResult:
    """Result of one suite."""

    def __init__(self, success: bool, summary: str, details: Optional[Dict[str, Any]] = None,
                 error: Optional[str] = None):
        self.success = success
        self.summary = summary
        self.details = details or {}
        self.error = error

    def to_dict(self) -> Dict[str, Any]:
        return {"success": self.success, "summary": self.summary, "details": self.details, "error": self.error}


class SuiteRunner:
    """Evaluates suites by dispatching on their check type."""

    def __init__(self, config: RunConfig):
        self.config = config
        self.checkers: Dict[str, Callable[[Dict, int, Slack], CheckResult]] = {
            "constants": self._check_constants,
            "classical_khinchine": self._check_classical_khinchine,
            "two_valued_equivalence": self._check_two_valued,
            "monte_carlo_consistency": self._check_monte_carlo,
            "theorem1_bounds": self._check_theorem1,
            "structure_properties": self._check_structure,
            "lemma1": self._check_lemma1,
            "hanner": self._check_hanner,
            "banach_mazur": self._check_banach_mazur,
            "norm_axioms": self._check_norm_axioms,
        }

    def run_suite(self, suite: Suite) -> CheckResult:
        """Run one suite; library errors turn into a failed result."""
        check_type = suite.check.get("type")
        checker = self.checkers.get(check_type)
        if checker is None:
            return CheckResult(False, f"unknown check type {check_type!r}", error="unknown check type")

        seed = self.config.seed + suite.seed_offset
        slack = Slack(rel=suite.rel_slack if suite.rel_slack is not None else self.config.rel_slack,
                      abs=self.config.abs_slack)
        logger.info("running %s (%s)", suite.id, check_type)
        try:
            return checker(suite.check, seed, slack)
        except KhinchineError as e:
            return CheckResult(False, f"{suite.id} raised", error=f"{type(e).__name__}: {e}")

    def run_all(self, suites: List[Suite]) -> List[CheckResult]:
        """Results in suite order."""
        return [self.run_suite(suite) for suite in suites]

    # -- individual checks -------------------------------------------------

    def _check_constants(self, params: Dict, seed: int, slack: Slack) -> CheckResult:
        rel = params.get("closed_form_rel", 1e-12)
        c1, c2, c4 = (khinchine_constants(p) for p in (1.0, 2.0, 4.0))
        details = {
            "a_2_b_2_exact": c2.a_p == 1.0 and c2.b_p == 1.0,
            "a_1": math.isclose(c1.a_p, 2.0 ** -0.5, rel_tol=rel),
            "b_4": math.isclose(c4.b_p, 3.0 ** 0.25, rel_tol=rel),
        }

        grid = np.arange(1.0, params.get("p_max", 8.0) + 0.125, 0.25)
        table = [khinchine_constants(float(p)) for p in grid]
        details["sandwich"] = all(c.a_p <= 1.0 <= c.b_p for c in table)
        low = [c.a_p for c in table if c.p <= 2]
        high = [c.b_p for c in table if c.p >= 2]
        details["a_p_monotone"] = all(x <= y for x, y in zip(low, low[1:]))
        details["b_p_monotone"] = all(x <= y for x, y in zip(high, high[1:]))
        details["a_p_one_above_2"] = all(c.a_p == 1.0 for c in table if c.p >= 2)
        details["b_p_one_below_2"] = all(c.b_p == 1.0 for c in table if c.p <= 2)
        ok = all(details.values())
        return CheckResult(ok, "constants closed forms and monotonicity", details)

    def _check_classical_khinchine(self, params: Dict, seed: int, slack: Slack) -> CheckResult:
        rng = seeded_rng(seed)
        exponents = params.get("p_values", [1, 1.5, 2, 3, 4])
        norm = NormSpec.lp(1, 1)
        failures = 0
        cases = params.get("cases", 1000)
        for _ in range(cases):
            n = int(rng.integers(1, params.get("n_max", 8) + 1))
            v = VectorTuple(rng.standard_normal((n, 1)))
            length = v.euclidean_sum(norm)
            for p in exponents:
                constants = khinchine_constants(float(p))
                value = ipf_exact(v, rademacher(), float(p), norm, budget=self.config.budget).value
                if not (slack.geq(value, constants.a_p * length) and slack.leq(value, constants.b_p * length)):
                    failures += 1
        return CheckResult(failures == 0, f"{failures} Khinchine violations in {cases} cases",
                           {"cases": cases, "failures": failures})

    def _check_two_valued(self, params: Dict, seed: int, slack: Slack) -> CheckResult:
        rng = seeded_rng(seed)
        tight = Slack(rel=params.get("rel", 1e-12), abs=0.0)
        norm = NormSpec.lp(parse_exponent(params.get("norm_exponent", 2)), params.get("d", 2))
        worst, failures, compared = 0.0, 0, 0
        for n in range(1, params.get("n_max", 8) + 1):
            v = VectorTuple(rng.standard_normal((n, norm.dim)))
            for t in params.get("t_values", [0.125, 0.25, 0.5]):
                for p in params.get("p_values", [1, 1.5, 2, 3]):
                    direct = ipf_two_valued_exact(v, t, float(p), norm, budget=self.config.budget).value
                    general = ipf_exact(v, SymmetricAtoms(((1.0, t),)), float(p), norm,
                                        budget=self.config.budget).value
                    compared += 1
                    worst = max(worst, abs(direct - general) / max(general, 1e-300))
                    if not tight.close(direct, general):
                        failures += 1
        return CheckResult(failures == 0, f"{failures}/{compared} mismatches",
                           {"compared": compared, "failures": failures, "worst_relative_error": worst})

    def _check_monte_carlo(self, params: Dict, seed: int, slack: Slack) -> CheckResult:
        configs = params.get("configs", 20)
        samples = params.get("samples", 100000)
        width = params.get("stderr_width", 4.0)
        inside = 0
        rows = []
        for index in range(configs):
            rng = seeded_rng(seed, index)
            n = int(rng.integers(2, 6))
            d = int(rng.integers(1, 4))
            r = [1.0, 2.0, math.inf][int(rng.integers(0, 3))]
            p = float([1.0, 1.5, 2.0, 3.0][int(rng.integers(0, 4))])
            norm = NormSpec.lp(r, d)
            f = random_step_law(rng)
            v = VectorTuple(rng.standard_normal((n, d)))
            exact = ipf_exact(v, f, p, norm, budget=self.config.budget)
            estimate = ipf_monte_carlo(v, f, p, norm, samples, seed=seed + index, workers=self.config.workers)
            hit = abs(estimate.pth_power - exact.pth_power) <= width * estimate.stderr
            inside += hit
            rows.append({"exact": exact.pth_power, "estimate": estimate.pth_power,
                         "stderr": estimate.stderr, "inside": hit})
        needed = params.get("required", configs - 1)
        return CheckResult(inside >= needed, f"{inside}/{configs} estimates within {width} stderr",
                           {"inside": inside, "required": needed, "runs": rows})

    def _check_theorem1(self, params: Dict, seed: int, slack: Slack) -> CheckResult:
        rng = seeded_rng(seed)
        exponents = params.get("p_values", [1, 1.25, 1.5, 2, 2.5, 3, 4])
        cases = params.get("cases", 500)
        details = {}
        for side, norm_exponents in (("lower", params.get("cotype_exponents", [1, 1.5, 2])),
                                     ("upper", params.get("type_exponents", [2, 3, 4]))):
            failures, worst = 0, math.inf
            for _ in range(cases):
                q = float(norm_exponents[int(rng.integers(0, len(norm_exponents)))])
                allowed = [p for p in exponents if (p >= q if side == "lower" else p <= q)]
                p = float(allowed[int(rng.integers(0, len(allowed)))])
                n = int(rng.integers(1, params.get("n_max", 5) + 1))
                d = int(rng.integers(1, params.get("d_max", 4) + 1))
                f = random_step_law(rng, max_atoms=params.get("max_atoms", 3))
                v = VectorTuple(rng.standard_normal((n, d)))
                report = verify_theorem1(v, f, p, q, NormSpec.lp(q, d), side, slack=slack,
                                         budget=self.config.budget)
                worst = min(worst, report.margin)
                failures += not report.holds
            details[side] = {"cases": cases, "failures": failures, "smallest_margin": worst}
        ok = all(side["failures"] == 0 for side in details.values())
        return CheckResult(ok, "cotype lower and type upper bounds", details)

    def _check_structure(self, params: Dict, seed: int, slack: Slack) -> CheckResult:
        rng = seeded_rng(seed)
        cases = params.get("cases", 200)
        budget = self.config.budget
        failures = {"level_monotonicity": 0, "barycenter_chain": 0, "p_monotonicity": 0, "l2_closed_form": 0}
        for _ in range(cases):
            n = int(rng.integers(1, params.get("n_max", 4) + 1))
            d = int(rng.integers(1, params.get("d_max", 3) + 1))
            p = float([1.0, 1.5, 2.0, 3.0][int(rng.integers(0, 4))])
            norm = NormSpec.lp([1.0, 1.5, 2.0, 3.0, math.inf][int(rng.integers(0, 5))], d)
            v = VectorTuple(rng.standard_normal((n, d)))
            f = random_step_law(rng)

            factors = rng.uniform(0.3, 1.0, size=len(f.atoms))
            lowered = [(level * c, mass) for (level, mass), c in zip(f.atoms, factors)]
            if any(a[0] <= b[0] for a, b in zip(lowered, lowered[1:])):
                lowered = [(level * factors.min(), mass) for level, mass in f.atoms]
            g = SymmetricAtoms(tuple(lowered))
            failures["level_monotonicity"] += not check_level_monotonicity(v, p, norm, f, g, slack, budget).holds
            failures["barycenter_chain"] += not check_barycenter_reduction(v, p, norm, f, slack, budget).holds
            _, monotone = check_p_monotonicity(v, f, norm, [1.0, 1.5, 2.0, 3.0, 4.0], slack, budget)
            failures["p_monotonicity"] += not monotone

            euclid = NormSpec.lp(2, d)
            exact = ipf_exact(v, f, 2.0, euclid, budget=budget).value
            failures["l2_closed_form"] += not slack.close(exact, l2_closed_form(v, f))
        ok = not any(failures.values())
        return CheckResult(ok, "structural properties of I_p", {"cases": cases, "failures": failures})

    def _check_lemma1(self, params: Dict, seed: int, slack: Slack) -> CheckResult:
        tolerance = Slack(rel=params.get("rel", 1e-12), abs=0.0)
        alphas = params.get("alphas", [0, 0.5, 1, 2, 3])
        checked, failures = 0, 0
        for report in random_sweep(params.get("n_max", 8), params.get("trials", 1000), seed, alphas, tolerance):
            checked += 1
            failures += not report.holds

        sharp_failures = 0
        for n in range(1, params.get("n_max", 8) + 1):
            for k in range(1, n + 1):
                for alpha in alphas:
                    spike = verify_lemma1(SubsetRatioInput((1.0,) + (0.0,) * (n - 1), k, alpha), tolerance)
                    flat = verify_lemma1(SubsetRatioInput((1.0,) * n, k, alpha), tolerance)
                    spike_target = 1.0 if alpha == 0 else k / n
                    sharp_failures += not tolerance.close(spike.ratio, spike_target)
                    sharp_failures += not tolerance.close(flat.ratio, (k / n) ** alpha)
        ok = failures == 0 and sharp_failures == 0
        return CheckResult(ok, f"{failures}/{checked} bound violations, {sharp_failures} sharpness misses",
                           {"checked": checked, "failures": failures, "sharpness_failures": sharp_failures})

    def _check_hanner(self, params: Dict, seed: int, slack: Slack) -> CheckResult:
        rng = seeded_rng(seed)
        trials = params.get("trials", 10000)
        d = params.get("d", 4)
        details: Dict[str, Any] = {}

        l2_gaps = []
        for _ in range(params.get("l2_cases", 200)):
            n = int(rng.integers(1, 7))
            dim = int(rng.integers(1, 5))
            report = hanner_gap(NormSpec.lp(2, dim), VectorTuple(rng.standard_normal((n, dim))), 2.0)
            l2_gaps.append(abs(report.gap) / max(report.lhs, 1e-300))
        details["l2_gap_zero"] = max(l2_gaps) <= slack.rel

        found = falsify_hanner(NormSpec.lp(1, 2), 1.0, 2, 2, HannerMode.TYPE, trials, seed, slack)
        details["l1_type_counterexample_found"] = found is not None

        clean = True
        for mode, exponents in ((HannerMode.COTYPE, params.get("cotype_exponents", [1, 1.5, 2])),
                                (HannerMode.TYPE, params.get("type_exponents", [2, 3, 4]))):
            for r in exponents:
                for n in range(2, params.get("n_max", 4) + 1):
                    hit = falsify_hanner(NormSpec.lp(r, d), float(r), n, d, mode, trials, seed + n, slack)
                    if hit is not None:
                        clean = False
                        details.setdefault("unexpected", []).append(
                            {"mode": mode.value, "r": r, "n": n, "witness": hit.to_dict()})
        details["lp_exponent_consistent"] = clean

        details["hlawka_l1"] = hlawka_search(NormSpec.lp(1, d), trials, seed, slack) is None
        details["hlawka_l2"] = hlawka_search(NormSpec.lp(2, d), trials, seed + 1, slack) is None

        # a Hlawka triple is Hanner cotype (1, 3) consistent
        cross_ok = True
        norm = NormSpec.lp(1, 3)
        for _ in range(params.get("cross_cases", 500)):
            triple = rng.standard_normal((3, 3))
            if hlawka_check(norm, *triple, slack=slack).holds:
                report = hanner_gap(norm, VectorTuple(triple), 1.0, slack, HannerMode.COTYPE)
                cross_ok = cross_ok and slack.geq(report.lhs, report.rhs)
        details["hlawka_implies_cotype_1_3"] = cross_ok

        ok = all(value for key, value in details.items() if isinstance(value, bool))
        return CheckResult(ok, "Hanner type/cotype and Hlawka", details)

    def _check_banach_mazur(self, params: Dict, seed: int, slack: Slack) -> CheckResult:
        details: Dict[str, Any] = {}
        grid = params.get("cor1_dimensions", [2, 3, 4, 8, 16, 100, 1000, 10000, 100000, 1000000])
        details["cor1_closed_form"] = all(
            math.isclose(corollary1_lower(1.0, math.inf, n).value, math.sqrt(n / 2.0), rel_tol=1e-12)
            for n in grid
        )

        planar = sandwich_report(1.0, math.inf, 2, seed=seed, slack=slack)
        details["planar_sandwich"] = (
            planar.consistent
            and planar.upper_bound is not None
            and slack.close(planar.upper_bound.value, 1.0)
            and slack.close(planar.best_rigorous_lower, 1.0)
        )

        violations = []
        for q in params.get("q_values", ["2", "3", "4", "inf"]):
            q = parse_exponent(q)
            for n in range(2, params.get("n_max", 16) + 1):
                report = sandwich_report(math.inf, q, n, seed=seed, slack=slack)
                known = known_distance(math.inf, q, n)
                bad = [b.method for b in report.lower_bounds if b.rigorous and not slack.leq(b.value, known)]
                if bad or not report.consistent:
                    violations.append({"q": q, "n": n, "methods": bad, "consistent": report.consistent})
        details["known_distance_respected"] = not violations
        if violations:
            details["violations"] = violations

        details["cotype_tight_l2"] = all(
            math.isclose(theorem2_cotype_lower(NormSpec.lp(2, n), 2.0).value, math.sqrt(n), rel_tol=1e-9)
            for n in range(1, params.get("n_max", 16) + 1)
        )
        ok = all(value for key, value in details.items() if isinstance(value, bool))
        return CheckResult(ok, "Banach-Mazur bounds, known values and transforms", details)

    def _check_norm_axioms(self, params: Dict, seed: int, slack: Slack) -> CheckResult:
        trials = params.get("trials", 1000)
        budget = self.config.budget
        value_report = check_value_norm_axioms(rademacher(), 2.0, NormSpec.lp(2, 2), trials, seed,
                                               slack=slack, budget=budget)
        rng = seeded_rng(seed)
        rows = rng.standard_normal((3, 2))
        argument_report = check_argument_norm_axioms(VectorTuple(rows), 1.5, trials, seed + 1,
                                                     slack=slack, budget=budget)
        try:
            check_argument_norm_axioms(VectorTuple([[1.0, 2.0], [-1.0, -2.0]]), 2.0, 1, seed)
            precondition_fires = False
        except PreconditionError:
            precondition_fires = True
        ok = value_report.passed and argument_report.passed and precondition_fires
        return CheckResult(ok, "norm axioms of I_p in v and in f", {
            "in_v": value_report.to_dict(),
            "in_f": argument_report.to_dict(),
            "zero_sum_precondition": precondition_fires,
        })
