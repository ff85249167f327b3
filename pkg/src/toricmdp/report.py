"""Structured reports and their text / JSON renderings.

Exact rationals are rendered as ``"num/den"`` strings; integral values are
plain integers.  ``parse_json(render_json(r)) == r`` for every report.
"""

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional

from . import __version__

_RATIONAL = re.compile(r"^-?\d+/\d+$")


def normalize(obj: Any) -> Any:
    """Convert to the plain form stored in reports (lists, dicts, ints, Fractions)."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, Fraction):
        return int(obj) if obj.denominator == 1 else obj
    if isinstance(obj, int):
        return int(obj)
    if isinstance(obj, float):
        return obj
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, dict):
        return {str(k): normalize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [normalize(x) for x in items]
    raise TypeError(f"cannot put {type(obj).__name__} in a report")


def _encode(obj):
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, dict):
        return {k: _encode(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_encode(x) for x in obj]
    return obj


def _decode(obj):
    if isinstance(obj, str) and _RATIONAL.match(obj):
        return Fraction(obj)
    if isinstance(obj, dict):
        return {k: _decode(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_decode(x) for x in obj]
    return obj


@dataclass
class Section:
    verdict: Optional[bool] = None
    witnesses: List[Any] = field(default_factory=list)
    data: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        self.witnesses = normalize(self.witnesses)
        self.data = normalize(self.data)


@dataclass
class Report:
    command: str
    sections: Dict[str, Section] = field(default_factory=dict)

    def add(self, name: str, verdict=None, witnesses=(), **data) -> Section:
        sec = Section(verdict, list(witnesses), data)
        self.sections[name] = sec
        return sec

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "sections": {name: {"verdict": s.verdict, "witnesses": _encode(s.witnesses),
                                "data": _encode(s.data)}
                         for name, s in self.sections.items()},
        }


def render_json(report: Report) -> str:
    return json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n"


def parse_json(text: str) -> Report:
    raw = json.loads(text)
    rep = Report(raw["command"])
    for name, s in raw["sections"].items():
        rep.sections[name] = Section(s["verdict"], _decode(s["witnesses"]), _decode(s["data"]))
    return rep


def _fmt(v) -> str:
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, list):
        return "[" + ", ".join(_fmt(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_fmt(x)}" for k, x in v.items()) + "}"
    return str(v)


def render_text(report: Report) -> str:
    lines = [f"toricmdp {__version__} :: {report.command}"]
    for name, s in report.sections.items():
        verdict = {True: "PASS", False: "FAIL", None: "-"}[s.verdict]
        lines.append(f"[{name}] {verdict}")
        for w in s.witnesses:
            lines.append(f"  witness: {_fmt(w)}")
        for k, v in s.data.items():
            if isinstance(v, list) and v and isinstance(v[0], (list, dict)):
                lines.append(f"  {k}:")
                lines.extend(f"    {_fmt(x)}" for x in v)
            else:
                lines.append(f"  {k}: {_fmt(v)}")
    return "\n".join(lines) + "\n"
