"""Loading the JSON configuration used by the command line.

    {
      "N": 2,
      "q": "symbolic" | {"12": "zeta", "13": "-1", ...},
      "cyclotomic_order": 3,
      "group": {"orders": [3], "action": "diagonal", "characters": [[1], [2]]}
             | {"orders": [2], "action": "monomial", "images": [["x2", "x1"]]},
      "bounds": {"degree_cap": 3, "max_p": 2, "max_entry_degree": 2}
    }

q keys are "ij" (1-based, one digit each) or "i,j".  Entries of "characters" are
exponents of zeta: chi_i(g_j) = zeta^characters[i][j].  Each image string is a
scalar times one variable, e.g. "-zeta*x2".
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .algebra import Action, GroupSpec, validate_action
from .expr import ParseError, parse_field_value, parse_monomial
from .scalars import QContext

DEFAULT_BOUNDS = {"degree_cap": 3, "max_p": 2, "max_entry_degree": 2}


class ConfigError(ValueError):
    pass


@dataclass
class Config:
    ctx: QContext
    action: Action | None = None
    bounds: dict = field(default_factory=lambda: dict(DEFAULT_BOUNDS))
    raw: dict = field(default_factory=dict)

    @property
    def group(self) -> GroupSpec | None:
        return self.action.group if self.action is not None else None


def _q_key(key: str, n: int) -> tuple[int, int]:
    parts = key.split(",") if "," in key else list(key) if len(key) == 2 else None
    if parts is None or len(parts) != 2 or not all(p.strip().isdigit() for p in parts):
        raise ConfigError(f"q key {key!r} must look like \"12\" or \"1,2\"")
    i, j = (int(p) - 1 for p in parts)
    if not (0 <= i < n and 0 <= j < n):
        raise ConfigError(f"q key {key!r} out of range 1..{n}")
    return i, j


def _build_action(ctx: QContext, block: dict) -> Action:
    orders = block.get("orders")
    if not isinstance(orders, list) or not orders or not all(isinstance(o, int) and o > 0 for o in orders):
        raise ConfigError("group.orders must be a non-empty list of positive integers")
    group = GroupSpec(tuple(orders))
    kind = block.get("action", "diagonal")
    if kind == "diagonal":
        # characters are powers of zeta, so zeta must have order divisible by every group order
        if ctx.cyclotomic_order % group.exponent() != 0:
            raise ConfigError(f"cyclotomic_order must be a multiple of the group exponent {group.exponent()}")
        chars = block.get("characters")
        if not isinstance(chars, list) or len(chars) != ctx.n or \
                any(not isinstance(r, list) or len(r) != len(orders) or
                    not all(isinstance(e, int) for e in r) for r in chars):
            raise ConfigError("group.characters must be an N x (number of orders) integer matrix")
        action = Action.diagonal(ctx, group, chars)
    elif kind == "monomial":
        images = block.get("images")
        if not isinstance(images, list) or len(images) != len(orders) or \
                any(not isinstance(r, list) or len(r) != ctx.n for r in images):
            raise ConfigError("group.images must list N image strings for each group generator")
        generator_images = []
        for row in images:
            parsed = []
            for text in row:
                coeff, mono = parse_monomial(str(text), ctx)
                if sum(mono) != 1:
                    raise ConfigError(f"image {text!r} must be a scalar times one variable")
                parsed.append((coeff, mono.index(1)))
            generator_images.append(parsed)
        action = Action(ctx, group, generator_images)
    else:
        raise ConfigError(f"unknown action type {kind!r}; use \"diagonal\" or \"monomial\"")
    problems = validate_action(action)
    if problems:
        raise ConfigError("invalid group action: " + "; ".join(problems))
    return action


def config_from_dict(data: dict) -> Config:
    if not isinstance(data, dict):
        raise ConfigError("configuration must be a JSON object")
    n = data.get("N")
    if not isinstance(n, int) or n < 1:
        raise ConfigError("N must be a positive integer")
    order = data.get("cyclotomic_order", 1)
    if not isinstance(order, int) or order < 1:
        raise ConfigError("cyclotomic_order must be a positive integer")
    q = data.get("q", "symbolic")
    try:
        if q == "symbolic":
            ctx = QContext(n, None, order)
        elif isinstance(q, dict):
            probe = QContext(n, None, order)
            table = {_q_key(k, n): parse_field_value(str(v), probe.field) for k, v in q.items()}
            ctx = QContext(n, table, order)
        else:
            raise ConfigError("q must be \"symbolic\" or an object of q_ij values")
        action = _build_action(ctx, data["group"]) if data.get("group") else None
    except ParseError as exc:
        raise ConfigError(str(exc)) from exc
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    bounds = dict(DEFAULT_BOUNDS)
    for key, value in (data.get("bounds") or {}).items():
        if key not in DEFAULT_BOUNDS:
            raise ConfigError(f"unknown bound {key!r}")
        if not isinstance(value, int) or value < 0:
            raise ConfigError(f"bound {key!r} must be a non-negative integer")
        bounds[key] = value
    return Config(ctx, action, bounds, data)


def load_config(path: str | Path | None) -> Config:
    """Read a configuration file; None gives N = 2 with symbolic q and no group."""
    if path is None:
        return config_from_dict({"N": 2, "q": "symbolic"})
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path} is not valid JSON: {exc}") from exc
    return config_from_dict(data)
