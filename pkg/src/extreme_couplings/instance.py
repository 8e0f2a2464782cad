"""Instance files: one JSON document describing an action and optional marginals.

    {
      "x_size": 2,
      "y_size": 2,
      "generators": [{"perm_x": [1, 0], "perm_y": [1, 0]}],
      "marginals": {"mu1": ["1/2", "1/2"], "mu2": ["1/2", "1/2"]}
    }

Rationals are written as "p/q" (or integer) strings and reduced on load.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Optional

from .extreme_measures import Marginals
from .group_action import ActionSpec, validate_action

SHIPPED = ("trivial_2x2", "swap_2x2", "sym3", "sym4")

_RATIONAL = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+)\s*)?$")


class InstanceParseError(ValueError):
    """Malformed instance document (CLI exit code 2)."""


class InstanceValidationError(ValueError):
    """Well-formed document with invalid content (CLI exit code 3)."""


@dataclass(frozen=True)
class Instance:
    name: str
    spec: ActionSpec
    marginals: Optional[Marginals]

    def to_document(self) -> dict:
        doc = {
            "x_size": self.spec.x_size,
            "y_size": self.spec.y_size,
            "generators": [{"perm_x": list(px), "perm_y": list(py)} for px, py in self.spec.generators],
        }
        if self.marginals is not None:
            doc["marginals"] = {
                "mu1": [format_rational(v) for v in self.marginals.mu1],
                "mu2": [format_rational(v) for v in self.marginals.mu2],
            }
        return doc

    def digest(self) -> str:
        canon = json.dumps(self.to_document(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canon.encode("utf-8")).hexdigest()


def format_rational(q: Fraction) -> str:
    return str(Fraction(q))


def parse_rational(text) -> Fraction:
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise InstanceParseError(f"rational must be a 'p/q' string, got {text!r}")
    match = _RATIONAL.match(text)
    if not match:
        raise InstanceParseError(f"malformed rational {text!r}")
    num, den = int(match.group(1)), int(match.group(2) or 1)
    if den == 0:
        raise InstanceParseError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def _int_list(value, where):
    if not isinstance(value, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in value):
        raise InstanceParseError(f"{where} must be a list of integers")
    return tuple(value)


def parse_instance(text: str, name: str = "<instance>") -> Instance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InstanceParseError("instance must be a JSON object")
    for key in ("x_size", "y_size"):
        if key not in doc:
            raise InstanceParseError(f"missing field {key!r}")
        if not isinstance(doc[key], int) or isinstance(doc[key], bool):
            raise InstanceParseError(f"{key} must be an integer")
    gens_raw = doc.get("generators", [])
    if not isinstance(gens_raw, list):
        raise InstanceParseError("generators must be a list")
    gens = []
    for k, g in enumerate(gens_raw):
        if not isinstance(g, dict) or "perm_x" not in g or "perm_y" not in g:
            raise InstanceParseError(f"generator {k} needs perm_x and perm_y")
        gens.append((_int_list(g["perm_x"], f"generator {k} perm_x"), _int_list(g["perm_y"], f"generator {k} perm_y")))
    spec = ActionSpec(doc["x_size"], doc["y_size"], tuple(gens))
    problems = validate_action(spec)
    if problems:
        raise InstanceValidationError("; ".join(problems))

    marginals = None
    if doc.get("marginals") is not None:
        mr = doc["marginals"]
        if not isinstance(mr, dict) or not isinstance(mr.get("mu1"), list) or not isinstance(mr.get("mu2"), list):
            raise InstanceParseError("marginals must contain lists mu1 and mu2")
        marginals = Marginals(
            tuple(parse_rational(v) for v in mr["mu1"]),
            tuple(parse_rational(v) for v in mr["mu2"]),
        )
    return Instance(name, spec, marginals)


def load_instance(ref: str) -> Instance:
    """Load from a path, or by name from the shipped instances."""
    path = Path(ref)
    if path.is_file():
        return parse_instance(path.read_text(encoding="utf-8"), path.stem)
    if ref in SHIPPED:
        text = resources.files("extreme_couplings.instances").joinpath(f"{ref}.json").read_text(encoding="utf-8")
        return parse_instance(text, ref)
    raise InstanceParseError(f"no instance file or shipped instance named {ref!r}")


def dump_instance(inst: Instance) -> str:
    """Serialize with one generator or marginal per line."""
    doc = inst.to_document()
    lines = ["{", f'  "x_size": {doc["x_size"]},', f'  "y_size": {doc["y_size"]},']
    gens = [json.dumps(g, separators=(", ", ": ")) for g in doc["generators"]]
    if gens:
        lines.append('  "generators": [')
        lines += [f"    {g}," for g in gens[:-1]] + [f"    {gens[-1]}"]
        lines.append("  ]" + ("," if "marginals" in doc else ""))
    else:
        lines.append('  "generators": []' + ("," if "marginals" in doc else ""))
    if "marginals" in doc:
        mr = doc["marginals"]
        lines.append('  "marginals": {')
        lines.append(f'    "mu1": {json.dumps(mr["mu1"])},')
        lines.append(f'    "mu2": {json.dumps(mr["mu2"])}')
        lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"
