"""1-indexed cycle notation, e.g. ``(1,2,3)(4,5)``."""

from __future__ import annotations

import re

from .errors import CycleSyntaxError, PointOutOfRange, RepeatedPoint
from .perm import Permutation

_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text, degree):
    """Parse disjoint cycles over ``1..degree`` into a 0-indexed permutation."""
    s = "".join(text.split())
    pos = 0
    cycles = []
    seen = set()
    while pos < len(s):
        m = _CYCLE.match(s, pos)
        if m is None:
            raise CycleSyntaxError(f"malformed cycle notation at offset {pos}: {text!r}")
        pos = m.end()
        body = m.group(1)
        if not body:
            continue
        parts = body.split(",")
        if any(not x.isdigit() for x in parts):
            raise CycleSyntaxError(f"malformed cycle {m.group(0)!r}")
        cyc = []
        for x in parts:
            a = int(x)
            if not 1 <= a <= degree:
                raise PointOutOfRange(f"point {a} outside 1..{degree}")
            if a in seen:
                raise RepeatedPoint(f"point {a} appears twice in {text!r}")
            seen.add(a)
            cyc.append(a - 1)
        cycles.append(tuple(cyc))
    if not s:
        raise CycleSyntaxError("empty cycle notation (use '()' for the identity)")
    return Permutation.from_cycles(cycles, degree)


def format_cycles(p):
    cyc = p.cycles()
    if not cyc:
        return "()"
    return "".join("(" + ",".join(str(a + 1) for a in c) + ")" for c in cyc)
