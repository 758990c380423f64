from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Mapping

from sympy.polys.domains import QQ

from .arith import rational
from .errors import DegenerateBasePoints, KZError
from .models import BasePointConfig, SelftestConfig, SelftestTier


class ConfigError(KZError):
    pass


BUILTIN_TIERS: Mapping[str, SelftestTier] = {
    "smoke": SelftestTier(name="smoke", cases=((3, -1), (3, 1))),
    "standard": SelftestTier(
        name="standard",
        cases=tuple((n, rho) for n in (3, 4) for rho in (-2, -1, 1, 2)),
    ),
    "spectra": SelftestTier(name="spectra", cases=(), spectra_max_n=8),
}


def _require_int(mapping: Mapping[str, Any], key: str, default: int, *, minimum: int = 0) -> int:
    value = mapping.get(key, default)
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise ConfigError(f"{key} must be an integer >= {minimum}")
    return value


def _parse_point(raw: Any, index: int) -> Any:
    if not isinstance(raw, (int, str)) or isinstance(raw, bool):
        raise ConfigError(f"base point {index + 1} must be an integer or a \"p/q\" string")
    try:
        return rational(raw)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"base point {index + 1} is not a rational: {raw!r}") from exc


def default_base_points(n: int) -> BasePointConfig:
    return BasePointConfig(points=tuple(QQ(k) for k in range(n)))


def validate_base_points(base: BasePointConfig, n: int) -> BasePointConfig:
    if base.n != n:
        raise ConfigError(f"expected {n} base points, got {base.n}")
    seen: dict[Any, int] = {}
    for idx, point in enumerate(base.points):
        if point in seen:
            raise DegenerateBasePoints(f"base points {seen[point] + 1} and {idx + 1} coincide")
        seen[point] = idx
    return base


def parse_base_points(raw: Any, n: int | None = None) -> BasePointConfig:
    """Accepts "0,1,2", a list of rationals, or {"points": [...]}."""

    if isinstance(raw, Mapping):
        raw = raw.get("points")
    if isinstance(raw, str):
        items: list[Any] = [part for part in raw.split(",") if part.strip()]
    elif isinstance(raw, (list, tuple)):
        items = list(raw)
    else:
        raise ConfigError("base points must be a comma list or an array")
    if not items:
        raise ConfigError("base points must not be empty")
    base = BasePointConfig(points=tuple(_parse_point(item, idx) for idx, item in enumerate(items)))
    return validate_base_points(base, base.n if n is None else n)


def _parse_tier(name: str, raw: Any) -> SelftestTier:
    if not isinstance(raw, Mapping):
        raise ConfigError(f"tier {name} must be an object")
    raw_cases = raw.get("cases", [])
    if not isinstance(raw_cases, list):
        raise ConfigError(f"tier {name} cases must be a list")
    cases = []
    for case in raw_cases:
        if (
            not isinstance(case, list)
            or len(case) != 2
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in case)
        ):
            raise ConfigError(f"tier {name} cases must be [n, rho] integer pairs")
        if case[0] < 2:
            raise ConfigError(f"tier {name} has n < 2")
        cases.append((case[0], case[1]))
    spectra_max_n = _require_int(raw, "spectra_max_n", 0)
    if not cases and spectra_max_n == 0:
        raise ConfigError(f"tier {name} runs nothing")
    return SelftestTier(name=name, cases=tuple(cases), spectra_max_n=spectra_max_n)


def parse_selftest_config(payload: Mapping[str, Any]) -> SelftestConfig:
    tiers = dict(BUILTIN_TIERS)
    raw_tiers = payload.get("tiers", {})
    if not isinstance(raw_tiers, Mapping):
        raise ConfigError("tiers must be an object")
    for name, raw in raw_tiers.items():
        if not isinstance(name, str) or not name:
            raise ConfigError("tier names must be non-empty strings")
        tiers[name] = _parse_tier(name, raw)

    return SelftestConfig(
        tiers=tiers,
        oracle_order=_require_int(payload, "oracle_order", 20),
        oracle_centers=_require_int(payload, "oracle_centers", 3),
        seed=_require_int(payload, "seed", 0),
        extra={str(k): v for k, v in payload.items() if k not in {"tiers", "oracle_order", "oracle_centers", "seed"}},
    )


def load_selftest_config(path: str | Path) -> SelftestConfig:
    path = Path(path)
    try:
        parsed = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: not valid JSON ({exc.msg})") from exc
    if not isinstance(parsed, Mapping):
        raise ConfigError("top-level config must be an object")
    return parse_selftest_config(parsed)
