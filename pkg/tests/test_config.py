from __future__ import annotations

import unittest
from pathlib import Path
from tempfile import TemporaryDirectory

from sympy.polys.domains import QQ

from kz_rational.config import (
    BUILTIN_TIERS,
    ConfigError,
    default_base_points,
    load_selftest_config,
    parse_base_points,
    parse_selftest_config,
)
from kz_rational.errors import DegenerateBasePoints

FIXTURES = Path(__file__).parent / "fixtures"


class BasePointTests(unittest.TestCase):
    def test_default_base_points(self) -> None:
        self.assertEqual(default_base_points(3).points, (QQ(0), QQ(1), QQ(2)))

    def test_parse_comma_list_and_mapping(self) -> None:
        self.assertEqual(parse_base_points("0,1/2,-3").points, (QQ(0), QQ(1, 2), QQ(-3)))
        self.assertEqual(parse_base_points({"points": [1, "5/3"]}).points, (QQ(1), QQ(5, 3)))

    def test_count_must_match(self) -> None:
        with self.assertRaises(ConfigError):
            parse_base_points("0,1", 3)

    def test_coincident_points(self) -> None:
        with self.assertRaises(DegenerateBasePoints) as ctx:
            parse_base_points("0,2,2")
        self.assertIn("2 and 3", str(ctx.exception))
        with self.assertRaises(DegenerateBasePoints):
            parse_base_points(["1/2", "2/4"])

    def test_rejects_non_rationals(self) -> None:
        for raw in ("0,x", [True, 1], [0.5, 1], "", 7):
            with self.assertRaises(ConfigError, msg=repr(raw)):
                parse_base_points(raw)


class SelftestConfigTests(unittest.TestCase):
    def test_defaults_keep_builtin_tiers(self) -> None:
        config = parse_selftest_config({})
        self.assertEqual(set(config.tiers), set(BUILTIN_TIERS))
        self.assertEqual(config.oracle_order, 20)
        self.assertEqual(config.tiers["smoke"].cases, ((3, -1), (3, 1)))

    def test_load_fixture(self) -> None:
        config = load_selftest_config(FIXTURES / "selftest_config.json")
        self.assertEqual(config.seed, 7)
        self.assertEqual(config.oracle_order, 8)
        self.assertEqual(config.tiers["tiny"].cases, ((2, -1), (3, -1)))
        self.assertEqual(config.tiers["spectra-small"].spectra_max_n, 4)
        self.assertIn("standard", config.tiers)
        self.assertEqual(config.extra, {"notes": "small tiers for quick runs"})

    def test_invalid_tiers(self) -> None:
        bad_payloads = (
            {"tiers": []},
            {"tiers": ""},
            {"tiers": None},
            {"tiers": {"x": []}},
            {"tiers": {"x": {"cases": {}}}},
            {"tiers": {"x": {"cases": [[3]]}}},
            {"tiers": {"x": {"cases": [[1, -1]]}}},
            {"tiers": {"x": {"cases": [[3, "1/2"]]}}},
            {"tiers": {"x": {}}},
            {"oracle_order": -1},
            {"seed": True},
        )
        for payload in bad_payloads:
            with self.assertRaises(ConfigError, msg=repr(payload)):
                parse_selftest_config(payload)

    def test_load_rejects_bad_json(self) -> None:
        with TemporaryDirectory() as tmp:
            path = Path(tmp) / "broken.json"
            path.write_text("{not json", encoding="utf-8")
            with self.assertRaises(ConfigError):
                load_selftest_config(path)
            path.write_text("[1, 2]", encoding="utf-8")
            with self.assertRaises(ConfigError):
                load_selftest_config(path)


if __name__ == "__main__":
    unittest.main()
