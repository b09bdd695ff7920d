"""JSON serialization of Schottky configurations.

Schema::

    {
      "name": "optional",
      "description": "optional",
      "chains": [
        {"center_zeta": [re, im], "center_v": v, "lambda": [re, im]},
        ...
      ]
    }
"""

from __future__ import annotations

import json
import math
from pathlib import Path

from .errors import CyganError
from .heisenberg import Point, ReflectionGenerator
from .schottky import SchottkyConfig

__all__ = ["ConfigParseError", "config_from_dict", "config_to_dict", "load_config", "dump_config"]


class ConfigParseError(CyganError, ValueError):
    """The config document is not valid JSON or does not match the schema."""


def _number(x, where):
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise ConfigParseError(f"{where}: expected a number, got {json.dumps(x)}")
    x = float(x)
    if not math.isfinite(x):
        raise ConfigParseError(f"{where}: number must be finite")
    return x


def _pair(x, where):
    if not isinstance(x, list) or len(x) != 2:
        raise ConfigParseError(f"{where}: expected [re, im]")
    return complex(_number(x[0], f"{where}[0]"), _number(x[1], f"{where}[1]"))


def config_from_dict(doc) -> SchottkyConfig:
    if not isinstance(doc, dict):
        raise ConfigParseError("top level: expected a JSON object")
    chains = doc.get("chains")
    if not isinstance(chains, list):
        raise ConfigParseError("chains: expected a list")
    if len(chains) < 2:
        raise ConfigParseError("chains: at least 2 chains required")
    gens = []
    for k, ch in enumerate(chains):
        where = f"chains[{k}]"
        if not isinstance(ch, dict):
            raise ConfigParseError(f"{where}: expected an object")
        for key in ("center_zeta", "center_v", "lambda"):
            if key not in ch:
                raise ConfigParseError(f"{where}.{key}: missing")
        zeta = _pair(ch["center_zeta"], f"{where}.center_zeta")
        v = _number(ch["center_v"], f"{where}.center_v")
        lam = _pair(ch["lambda"], f"{where}.lambda")
        if lam == 0:
            raise ConfigParseError(f"{where}.lambda: must be nonzero")
        gens.append(ReflectionGenerator(Point(zeta, v), lam))
    for key in ("name", "description"):
        if key in doc and doc[key] is not None and not isinstance(doc[key], str):
            raise ConfigParseError(f"{key}: expected a string")
    return SchottkyConfig(tuple(gens), name=doc.get("name"), description=doc.get("description"))


def config_to_dict(cfg: SchottkyConfig) -> dict:
    doc = {}
    if cfg.name is not None:
        doc["name"] = cfg.name
    if cfg.description is not None:
        doc["description"] = cfg.description
    doc["chains"] = [
        {
            "center_zeta": [g.center.zeta.real, g.center.zeta.imag],
            "center_v": g.center.v,
            "lambda": [g.lam.real, g.lam.imag],
        }
        for g in cfg.generators
    ]
    return doc


def load_config(path: str | Path) -> SchottkyConfig:
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return config_from_dict(doc)


def dump_config(cfg: SchottkyConfig, path: str | Path | None = None) -> str:
    text = json.dumps(config_to_dict(cfg), indent=2) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text
