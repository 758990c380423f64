from __future__ import annotations

import random
import unittest
from pathlib import Path
from unittest import mock

from kz_rational import selftest
from kz_rational.config import ConfigError, load_selftest_config, parse_selftest_config
from kz_rational.errors import DegenerateBasePoints, SingularMatrix
from kz_rational.models import CheckReport, SelftestTier
from kz_rational.selftest import run_case, run_selftest, run_spectra, run_tier

FIXTURES = Path(__file__).parent / "fixtures"


class RunCaseTests(unittest.TestCase):
    def test_two_points_case(self) -> None:
        config = parse_selftest_config({"oracle_order": 5, "oracle_centers": 1})
        results = run_case(2, -1, config, random.Random(0))
        names = [r.name for r in results]
        self.assertEqual(names[0], "n=2 rho=-1: construct")
        self.assertIn("n=2 rho=-1: determinant", names)
        self.assertIn("n=2 rho=-1: oracle equation 2 center 1", names)
        self.assertFalse([r for r in results if r.status == "fail"])

    def test_construction_failure_short_circuits(self) -> None:
        config = parse_selftest_config({})
        with mock.patch.object(selftest, "assemble_product", side_effect=DegenerateBasePoints("points coincide")):
            results = run_case(3, -1, config, random.Random(0))
        self.assertEqual(len(results), 1)
        self.assertEqual(results[0].status, "fail")
        self.assertEqual(results[0].witness, "points coincide")

    def test_raising_check_becomes_a_failed_row(self) -> None:
        config = parse_selftest_config({"oracle_order": 3, "oracle_centers": 1})
        with mock.patch.object(selftest, "check_consistency", side_effect=SingularMatrix("boom")):
            results = run_case(2, -1, config, random.Random(0))
        failed = [r for r in results if r.status == "fail"]
        self.assertEqual([(r.name, r.witness) for r in failed], [("n=2 rho=-1", "boom")])


class TierTests(unittest.TestCase):
    def test_spectra_up_to_three(self) -> None:
        results = run_spectra(3)
        names = [r.name for r in results]
        self.assertIn("spectra n=3: Omega_2", names)
        self.assertIn("n=3: (P31+I) w2 = 2 w2", names)
        self.assertFalse([r for r in results if r.status == "fail"])

    def test_fixture_tier(self) -> None:
        config = load_selftest_config(FIXTURES / "selftest_config.json")
        report = run_tier(SelftestTier(name="pair", cases=((2, 1),)), config)
        self.assertEqual(report.command, "selftest pair")
        self.assertEqual(report.exit_status, 0)

    def test_run_selftest_merges_tiers(self) -> None:
        config = parse_selftest_config({})
        fake = CheckReport(command="x")
        with mock.patch.object(selftest, "run_tier", return_value=fake) as run:
            report = run_selftest(config, ["smoke", "spectra"])
        self.assertEqual(run.call_count, 2)
        self.assertEqual(report.command, "selftest smoke,spectra")

    def test_unknown_tier(self) -> None:
        with self.assertRaises(ConfigError):
            run_selftest(parse_selftest_config({}), ["nightly"])


if __name__ == "__main__":
    unittest.main()
