"""Group records: the text format, the bundled catalog and its validation.

A record is::

    degree 8
    name GL(2,3)
    expect_order 48
    expect_D 3
    (1,2)(3,4)
    ...

Records in a catalog file are separated by blank lines; ``#`` starts a
comment. Optional keys beyond ``name``/``expect_order``/``expect_D``:
``expect_primitive``, ``expect_quasiprimitive``, ``expect_semiprimitive``
(``yes``/``no``), ``normal`` (generators of a named intransitive normal
subgroup, one key per generator), ``tier`` and ``note``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources

from .chain import PermutationGroup, is_transitive
from .cycles import format_cycles, parse_cycles
from .errors import CycleSyntaxError, GroupError, MetadataMismatch, ParseError, PointOutOfRange

FLAG_KEYS = ("primitive", "quasiprimitive", "semiprimitive")

#: Generators of the Mathieu groups in their natural actions (1-indexed).
MATHIEU_GENERATORS = {
    11: ["(1,2,3,4,5,6,7,8,9,10,11)", "(3,7,11,8)(4,10,5,6)"],
    12: ["(1,2,3,4,5,6,7,8,9,10,11)", "(3,7,11,8)(4,10,5,6)", "(1,12)(2,11)(3,6)(4,8)(5,9)(7,10)"],
    22: [
        "(1,2,3,4,5,6,7,8,9,10,11)(12,13,14,15,16,17,18,19,20,21,22)",
        "(1,4,5,9,3)(2,8,10,7,6)(12,15,16,20,14)(13,19,21,18,17)",
        "(1,21)(2,10,8,6)(3,13,4,17)(5,19,9,18)(11,22)(12,14,16,20)",
    ],
    23: [
        "(1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,21,22,23)",
        "(3,17,10,7,9)(4,13,14,19,5)(8,18,11,12,23)(15,20,22,21,16)",
    ],
    24: [
        "(1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,21,22,23)",
        "(3,17,10,7,9)(4,13,14,19,5)(8,18,11,12,23)(15,20,22,21,16)",
        "(1,24)(2,23)(3,12)(4,16)(5,18)(6,10)(7,20)(8,14)(9,21)(11,17)(13,22)(15,19)",
    ],
}


def mathieu_group(n):
    return PermutationGroup([parse_cycles(s, n) for s in MATHIEU_GENERATORS[n]], n)


@dataclass
class CatalogEntry:
    name: str
    degree: int
    generators: list
    expected_order: int | None = None
    expected_D: int | None = None
    expected_flags: dict = field(default_factory=dict)
    normal: list = field(default_factory=list)
    tier: str = ""
    note: str = ""
    line: int = 0

    def group(self):
        return PermutationGroup([parse_cycles(s, self.degree) for s in self.generators], self.degree)

    def normal_subgroup(self):
        if not self.normal:
            return None
        return PermutationGroup([parse_cycles(s, self.degree) for s in self.normal], self.degree)


def _yes_no(value, lineno):
    v = value.lower()
    if v in ("yes", "true"):
        return True
    if v in ("no", "false"):
        return False
    raise ParseError(f"expected yes/no, got {value!r}", lineno)


def _parse_record(lines):
    """``lines`` are ``(lineno, text)`` pairs with comments stripped."""
    lineno, first = lines[0]
    parts = first.split(None, 1)
    if parts[0] != "degree" or len(parts) != 2:
        raise ParseError("record must start with 'degree <n>'", lineno)
    try:
        degree = int(parts[1])
    except ValueError:
        raise ParseError(f"bad degree {parts[1]!r}", lineno) from None
    if degree < 1:
        raise ParseError("degree must be positive", lineno)
    entry = CatalogEntry(name="", degree=degree, generators=[], line=lineno)
    for lineno, text in lines[1:]:
        if text.startswith("("):
            try:
                parse_cycles(text, degree)
            except (CycleSyntaxError, PointOutOfRange) as exc:
                raise ParseError(str(exc), lineno) from None
            entry.generators.append("".join(text.split()))
            continue
        key, _, value = text.partition(" ")
        value = value.strip()
        try:
            if key == "name":
                entry.name = value
            elif key == "expect_order":
                entry.expected_order = int(value)
            elif key == "expect_D":
                entry.expected_D = int(value)
            elif key.startswith("expect_") and key[7:] in FLAG_KEYS:
                entry.expected_flags[key[7:]] = _yes_no(value, lineno)
            elif key == "normal":
                parse_cycles(value, degree)
                entry.normal.append("".join(value.split()))
            elif key == "tier":
                entry.tier = value
            elif key == "note":
                entry.note = value
            else:
                raise ParseError(f"unknown key {key!r}", lineno)
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(str(exc), lineno) from None
    if not entry.name:
        entry.name = f"group of degree {degree}"
    return entry


def parse_records(text):
    records, current = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        if not raw.strip():
            if current:
                records.append(current)
                current = []
            continue
        body = raw.split("#", 1)[0].strip()
        if body:
            current.append((lineno, body))
    if current:
        records.append(current)
    return [_parse_record(r) for r in records]


def parse_group_record(text):
    """Exactly one record, as used by the command-line tools."""
    entries = parse_records(text)
    if not entries:
        raise ParseError("no group record found")
    if len(entries) > 1:
        raise ParseError(f"expected one record, found {len(entries)}", entries[1].line)
    return entries[0]


def format_record(entry):
    lines = [f"degree {entry.degree}"]
    if entry.name:
        lines.append(f"name {entry.name}")
    if entry.expected_order is not None:
        lines.append(f"expect_order {entry.expected_order}")
    if entry.expected_D is not None:
        lines.append(f"expect_D {entry.expected_D}")
    for key in FLAG_KEYS:
        if key in entry.expected_flags:
            lines.append(f"expect_{key} {'yes' if entry.expected_flags[key] else 'no'}")
    for s in entry.normal:
        lines.append(f"normal {s}")
    if entry.tier:
        lines.append(f"tier {entry.tier}")
    if entry.note:
        lines.append(f"note {entry.note}")
    lines.extend(entry.generators)
    return "\n".join(lines) + "\n"


def record_from_group(group, name="", **extra):
    return CatalogEntry(
        name=name,
        degree=group.degree,
        generators=[format_cycles(g) for g in group.generators] or ["()"],
        **extra,
    )


def load_catalog(path, validate=False):
    with open(path, encoding="utf-8") as fh:
        entries = parse_records(fh.read())
    if validate:
        for e in entries:
            validate_entry(e)
    return entries


def builtin_catalog_path():
    return resources.files("dngroups") / "data" / "catalog.txt"


def builtin_catalog(validate=False):
    entries = parse_records(builtin_catalog_path().read_text(encoding="utf-8"))
    if validate:
        for e in entries:
            validate_entry(e)
    return entries


def find_entry(name, entries=None):
    for e in entries if entries is not None else builtin_catalog():
        if e.name == name:
            return e
    raise KeyError(name)


def validate_entry(entry, flags=False, cap=10**7):
    """Check order and transitivity; with ``flags`` also the classification."""
    from .structure import is_primitive, is_quasiprimitive, is_semiprimitive

    G = entry.group()
    if entry.expected_order is not None and G.order != entry.expected_order:
        raise MetadataMismatch(entry.name, f"order {G.order} != expected {entry.expected_order}")
    if not is_transitive(G):
        raise MetadataMismatch(entry.name, "group is not transitive")
    if "primitive" in entry.expected_flags and is_primitive(G) != entry.expected_flags["primitive"]:
        raise MetadataMismatch(entry.name, "primitivity differs from expectation")
    if flags:
        for key, fn in (("quasiprimitive", is_quasiprimitive), ("semiprimitive", is_semiprimitive)):
            if key in entry.expected_flags:
                try:
                    got = fn(G, cap)
                except GroupError:
                    continue
                if got != entry.expected_flags[key]:
                    raise MetadataMismatch(entry.name, f"{key} differs from expectation")
    return G
