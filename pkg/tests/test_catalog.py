import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dngroups import Permutation, format_cycles, parse_cycles
from dngroups.catalog import (
    builtin_catalog,
    find_entry,
    format_record,
    load_catalog,
    parse_group_record,
    parse_records,
    validate_entry,
)
from dngroups.constructions import (
    action_on_set_partitions,
    affine_group,
    alternating_group,
    cyclic_group,
    dihedral_group,
    general_linear_on_vectors,
    product_action,
    projective_group,
    psl2_on_projective_line,
    row_blocks,
    symmetric_group,
    wreath_imprimitive,
)
from dngroups.errors import (
    CycleSyntaxError,
    DegreeTooLarge,
    MetadataMismatch,
    ParseError,
    PointOutOfRange,
    RepeatedPoint,
    UnsupportedField,
)
from dngroups.fields import field
from dngroups.structure import BlockSystem, is_primitive

# -- cycle notation --------------------------------------------------------------


def test_parse_identity():
    assert parse_cycles("()", 4).is_identity()


def test_parse_cycles_images():
    p = parse_cycles("(1,2,3)(4,5)", 5)
    assert [x + 1 for x in p] == [2, 3, 1, 5, 4]


def test_parse_is_whitespace_insensitive():
    assert parse_cycles(" ( 1 , 2 ,3)\t(4,5) ", 5) == parse_cycles("(1,2,3)(4,5)", 5)


def test_repeated_point():
    with pytest.raises(RepeatedPoint):
        parse_cycles("(1,2)(1,3)", 3)


@pytest.mark.parametrize("bad", ["(1,2", "1,2)", "(1,,2)", "(a,b)", "", "(1)(2"])
def test_malformed(bad):
    with pytest.raises(CycleSyntaxError):
        parse_cycles(bad, 4)


def test_point_out_of_range():
    with pytest.raises(PointOutOfRange):
        parse_cycles("(1,5)", 4)
    with pytest.raises(PointOutOfRange):
        parse_cycles("(0,1)", 4)


@given(st.integers(1, 12).flatmap(lambda n: st.permutations(range(n))))
def test_format_parse_round_trip(images):
    p = Permutation(images)
    assert parse_cycles(format_cycles(p), len(p)) == p


def test_bundled_generators_round_trip():
    for e in builtin_catalog():
        for s in e.generators:
            p = parse_cycles(s, e.degree)
            assert parse_cycles(format_cycles(p), e.degree) == p


# -- fields ------------------------------------------------------------------------


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 11, 13, 16])
def test_field_axioms(q):
    F = field(q)
    elems = range(q)
    for a, b in itertools.product(elems, elems):
        assert F.add(a, b) == F.add(b, a)
        assert F.mul(a, b) == F.mul(b, a)
        assert F.sub(F.add(a, b), b) == a
    for a in range(1, q):
        assert F.mul(a, F.inv(a)) == 1
    assert F.mult_order(F.primitive) == q - 1
    # distributivity on a sample
    for a, b, c in itertools.islice(itertools.product(elems, elems, elems), 500):
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


def test_frobenius_is_additive_and_multiplicative():
    F = field(16)
    for a, b in itertools.product(range(16), range(16)):
        assert F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b))
        assert F.frobenius(F.mul(a, b)) == F.mul(F.frobenius(a), F.frobenius(b))


def test_unsupported_field():
    with pytest.raises(UnsupportedField):
        field(6)


# -- constructors ------------------------------------------------------------------


def test_symmetric_and_alternating_orders():
    assert symmetric_group(4).order == 24
    A5 = alternating_group(5)
    assert A5.order == 60 and is_primitive(A5)
    assert alternating_group(3).order == 3


@pytest.mark.parametrize("n", range(1, 9))
def test_sym_alt_orders(n):
    assert symmetric_group(n).order == math.factorial(n)
    assert alternating_group(n).order == max(1, math.factorial(n) // 2)


def test_cyclic_dihedral():
    assert cyclic_group(7).order == 7
    assert dihedral_group(5).order == 10


def _gl_order(d, q):
    return math.prod(q**d - q**i for i in range(d))


def test_gl_brute_force_matrix_count():
    # count invertible 2x2 matrices over F_3 directly
    count = sum(1 for a, b, c, d in itertools.product(range(3), repeat=4) if (a * d - b * c) % 3)
    G = general_linear_on_vectors(2, 3)
    assert (G.degree, G.order) == (8, count) == (8, 48)


@pytest.mark.parametrize("d,q", [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (4, 2), (2, 7)])
def test_gl_orders(d, q):
    G = general_linear_on_vectors(d, q)
    assert G.degree == q**d - 1
    assert G.order == _gl_order(d, q)


def test_gl22_is_sym3():
    G = general_linear_on_vectors(2, 2)
    assert (G.degree, G.order) == (3, 6)


def test_gl_size_limits():
    with pytest.raises(UnsupportedField):
        general_linear_on_vectors(2, 6)
    with pytest.raises(DegreeTooLarge):
        general_linear_on_vectors(14, 2)


@pytest.mark.parametrize("q", [5, 7, 8, 9, 11, 13, 16])
def test_psl2_orders(q):
    G = psl2_on_projective_line(q)
    assert G.degree == q + 1
    assert G.order == q * (q * q - 1) // math.gcd(2, q - 1)
    assert psl2_on_projective_line(q, "PGL").order == q * (q * q - 1)


def test_psl2_examples():
    assert psl2_on_projective_line(5).order == 60
    assert psl2_on_projective_line(5, "PGL").order == 120
    assert psl2_on_projective_line(8).order == 504
    assert psl2_on_projective_line(16, "PGammaL").order == 16320
    assert psl2_on_projective_line(9, "M10").order == 720
    with pytest.raises(UnsupportedField):
        psl2_on_projective_line(4)


def test_projective_and_affine_orders():
    assert projective_group(3, 3).order == 5616
    assert projective_group(3, 4, "GL", frobenius=1).order == 120960
    assert affine_group(1, 7, [((3,),)]).order == 42


def test_wreath_examples():
    W2 = wreath_imprimitive(2, 2)
    assert (W2.degree, W2.order) == (4, 8)
    W3 = wreath_imprimitive(3, 3)
    assert (W3.degree, W3.order) == (9, 1296)
    assert BlockSystem(tuple(tuple(b) for b in row_blocks(3, 3))).is_invariant(W3)
    assert product_action(3, 2).order == 72
    with pytest.raises(DegreeTooLarge):
        wreath_imprimitive(11, 10)


def test_partition_action_degree_15():
    G, objs = action_on_set_partitions(symmetric_group(5), [[0], [1, 2], [3, 4]])
    assert (G.degree, G.order) == (15, 120)


# -- catalog -----------------------------------------------------------------------

ROSTER_DEGREE_17 = {
    "D10", "F20", "F42", "2^3.F21", "2^3.GL(3,2)", "3^2.D8", "3^2.8.2", "3^2.SL(2,3)", "3^2.GL(2,3)",
    "2^4.GammaL(2,4)", "2^4.Alt(6)", "2^4.Sym(6)", "2^4.Alt(7)", "2^4.Alt(8)",
    "PSL(2,5)", "PGL(2,5)", "PSL(3,2)", "PSL(2,7)", "PGL(2,7)", "PSL(2,8)", "PGammaL(2,8)", "Sym(5)",
    "Alt(6)", "Sym(6)", "Alt(6).2_2", "Alt(6).2_3", "Alt(6).2^2", "PSL(2,11)", "M11", "PGL(2,11)",
    "M11 (degree 12)", "M12", "PSL(3,3)", "PGL(2,13)", "Alt(8)", "PSL(2,16).2", "PGammaL(2,16)",
}


def test_builtin_roster():
    entries = builtin_catalog()
    names = {e.name for e in entries}
    assert len(entries) >= 20
    assert ROSTER_DEGREE_17 <= names
    assert {"GL(2,3)", "M22", "M22.2", "M23", "M24", "PGammaL(3,4)", "2^5.GL(5,2)"} <= names
    tables = [e for e in entries if "table" in e.note]
    assert len(tables) == 43
    assert all(e.degree <= 32 for e in tables)


def test_d10_entry():
    e = find_entry("D10")
    assert (e.degree, e.expected_order, e.expected_D) == (5, 10, 3)
    assert e.group().order == 10


def test_every_entry_validates():
    for e in builtin_catalog():
        G = validate_entry(e, flags=e.expected_order <= 10**5)
        assert G.order == e.expected_order
        if "table" in e.note:
            assert e.expected_flags["primitive"] and is_primitive(G)


def test_primitive_implies_quasiprimitive_implies_semiprimitive():
    from dngroups import is_quasiprimitive, is_semiprimitive

    for e in builtin_catalog():
        if e.expected_order > 10**6:
            continue
        G = e.group()
        p, q, s = is_primitive(G), is_quasiprimitive(G), is_semiprimitive(G)
        assert (not p or q) and (not q or s)


def test_gl23_semiprimitive_not_quasiprimitive():
    from dngroups import is_quasiprimitive, is_semiprimitive

    G = general_linear_on_vectors(2, 3)
    assert is_semiprimitive(G) and not is_quasiprimitive(G)


RECORD = """# a comment
degree 5
name D10
expect_order 10
expect_D 3
(1,2,3,4,5)
(2,5)(3,4)
"""


def test_parse_group_record():
    e = parse_group_record(RECORD)
    assert (e.name, e.degree, e.expected_order, e.expected_D) == ("D10", 5, 10, 3)
    assert e.group().order == 10
    assert parse_group_record(format_record(e)) == e.__class__(**{**e.__dict__, "line": 1})


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError) as info:
        parse_records("degree 3\nname x\n(1,2\n")
    assert info.value.line == 3
    with pytest.raises(ParseError) as info:
        parse_records("degree 3\nbogus 1\n")
    assert info.value.line == 2
    with pytest.raises(ParseError) as info:
        parse_records("name x\n")
    assert info.value.line == 1
    with pytest.raises(ParseError):
        parse_group_record("")
    with pytest.raises(ParseError):
        parse_group_record("degree 2\n(1,2)\n\ndegree 2\n(1,2)\n")


def test_metadata_mismatch_names_entry(tmp_path):
    path = tmp_path / "cat.txt"
    path.write_text("degree 4\nname wrong\nexpect_order 5\n(1,2,3,4)\n")
    with pytest.raises(MetadataMismatch) as info:
        load_catalog(path, validate=True)
    assert "wrong" in str(info.value)


def test_load_catalog_round_trip(tmp_path):
    path = tmp_path / "cat.txt"
    entries = builtin_catalog()[:5]
    path.write_text("\n".join(format_record(e) for e in entries))
    again = load_catalog(path, validate=True)
    assert [(e.name, e.generators) for e in again] == [(e.name, e.generators) for e in entries]
