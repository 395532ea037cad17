import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import CATALAN, KNOWN_TERMS
from permgrid.grammar import (
    BUILTIN_NAMES,
    GrammarError,
    GrammarSystem,
    NotZGuardedError,
    Production,
    Terminal,
    Weight,
    builtin_grammar,
    builtin_text,
    check_unambiguity_counts,
    fixed_point_sweeps,
    format_grammar,
    parse_grammar,
    residuals,
    solve_series,
    start_series,
    transcribe,
)
from permgrid.juxtaposition import CLASS_A, CLASS_B, CLASS_C
from permgrid.perm import Av


def test_builtin_shapes():
    cat = builtin_grammar("catalan")
    assert cat.variables == ("C",) and len(cat.productions) == 2
    assert set(builtin_grammar("classB").variables) == {"S", "M", "B", "C", "Cb", "Cp", "Eb"}
    assert set(builtin_grammar("classC").variables) == {"S", "M", "B", "C", "Cb", "Cp"}
    with pytest.raises(GrammarError, match="unknown grammar"):
        builtin_grammar("classD")


def test_class_b_extra_weight():
    g = builtin_grammar("classB")
    extra = [p for p in g.productions if not p.extra_weight.is_one]
    assert [(p.head, p.body, p.extra_weight) for p in extra] == [("S", ("C", "M", "Cb"), Weight(0, 1))]


def test_print_rules():
    assert builtin_grammar("classA").rules() == "S -> eps | D S L Cb\nCb -> eps | Db Cb L Cb"
    assert builtin_grammar("catalan").rules() == "C -> eps | R C U C"


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_text_roundtrip_is_bit_exact(name):
    text = builtin_text(name)
    g = parse_grammar(text, name)
    assert format_grammar(g) == text
    assert parse_grammar(format_grammar(g)) == g


# --- transcription ------------------------------------------------------------

def _sympy_system(system):
    return {sympy.Symbol(v.lower()): sympy.sympify(system.equation(v).split("=", 1)[1])
            for v in system.equations}


z, t, s, c, cb, cp, m, b, e, eb = sympy.symbols("z t s c cb cp m b e eb")

# The printed equation systems; bold letters written cb, e.
PRINTED = {
    "catalan": {c: 1 + z * c**2},
    "classA": {s: 1 + z * s * cb, cb: 1 + t * z * cb**2},
    "classB": {
        s: c + c * m * cb * t,
        b: z**2 * t + z * c * b * e,
        m: z * c * m * cb + b * e * z * t * (cb - 1) + z**2 * t * (cb - 1),
        c: 1 + z * c**2,
        cb: 1 + z * t * cb**2,
        e: 1 + z * t * e,
    },
    "classC": {
        s: c + c * m * cb,
        m: z**2 * t * (cb - 1) + z * c * b * (cb - 1) + z * c * m * cb,
        b: z * c * b + z**2 * t,
        c: 1 + c**2 * z,
        cb: 1 + cb**2 * z * t,
    },
}


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_transcription_matches_printed_system(name):
    ours = _sympy_system(transcribe(builtin_grammar(name)))
    # C+ is the nonempty part of the decorated Catalan block: cp = cb - 1.
    rename = {cp: cb - 1, eb: e}
    if cp in ours:
        assert sympy.expand(ours.pop(cp) - (z * t * cb**2)) == 0
    ours = {rename.get(k, k): sympy.expand(v.subs(rename)) for k, v in ours.items()}
    printed = PRINTED[name]
    assert set(ours) == set(printed)
    for var, rhs in printed.items():
        assert sympy.expand(ours[var] - rhs) == 0, var


def test_transcription_strings():
    assert str(transcribe(builtin_grammar("catalan"))) == "c = 1 + z*c^2"
    assert transcribe(builtin_grammar("classC")).equation("B") == "b = z^2*t + z*b*c"


# --- solving ---------------------------------------------------------------

def test_catalan_series():
    assert list(start_series(builtin_grammar("catalan"), 10)) == CATALAN


def test_catalan_recurrence_to_order_100():
    cs = list(start_series(builtin_grammar("catalan"), 100))
    for n in range(100):
        assert cs[n + 1] == sum(cs[i] * cs[n - i] for i in range(n + 1))


@pytest.mark.parametrize("label", ["A", "B", "C"])
def test_class_terms(label):
    assert list(start_series(builtin_grammar(f"class{label}"), 12)) == [1] + KNOWN_TERMS[label]


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_zero_residual(name):
    g = builtin_grammar(name)
    values = solve_series(g, 60)
    assert all(not any(r) for r in residuals(g, values, 60).values())


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_sweeps_agree_and_stabilise_in_time(name):
    g = builtin_grammar(name)
    order = 15
    values, stable = fixed_point_sweeps(g, order)
    assert values == solve_series(g, order)
    for v in g.variables:
        for k, sweep in enumerate(stable[v]):
            assert sweep <= k + 1


def test_t_substitution_off():
    # with t = 1 the decorated Catalan block counts plain paths
    values = solve_series(builtin_grammar("classA"), 6, t_substitution=False)
    assert list(values["Cb"]) == CATALAN[:7]


def test_nonnegative_integers():
    for name in BUILTIN_NAMES:
        for ser in solve_series(builtin_grammar(name), 40).values():
            assert all(isinstance(x, int) and x >= 0 for x in ser)


@pytest.mark.parametrize("grammar, cls", [
    ("catalan", Av("231")), ("classA", CLASS_A), ("classB", CLASS_B), ("classC", CLASS_C)])
def test_unambiguity_counts(grammar, cls):
    assert check_unambiguity_counts(builtin_grammar(grammar), cls, 8)


def test_unambiguity_counts_detects_mismatch():
    assert not check_unambiguity_counts(builtin_grammar("classA"), CLASS_B, 5)


# --- validation --------------------------------------------------------------

def test_not_z_guarded():
    with pytest.raises(NotZGuardedError):
        parse_grammar("start S\nterm a z^0 t^0\nS -> a S\nS -> eps\n")


def test_sweeps_raise_when_not_guarded():
    # constructed without the load-time check to exercise the sweep contract
    g = object.__new__(GrammarSystem)
    object.__setattr__(g, "terminals", (Terminal("a", Weight(0, 0)),))
    object.__setattr__(g, "productions", (Production("S", ("a", "S")), Production("S", ()),
                                          Production("S", ("S", "S"))))
    object.__setattr__(g, "start", "S")
    object.__setattr__(g, "name", "loop")
    with pytest.raises(NotZGuardedError, match="not z-guarded"):
        fixed_point_sweeps(g, 3)


@pytest.mark.parametrize("text, match", [
    ("start S\nS -> X\n", "undeclared"),
    ("start S\nS => eps\n", "line 2"),
    ("start T\nS -> eps\n", "start"),
    ("start S\nterm a z^1 t^0\nterm a z^1 t^0\nS -> a\n", "twice"),
    ("start S\nterm a z^x t^0\nS -> a\n", "line 2"),
])
def test_grammar_errors(text, match):
    with pytest.raises(GrammarError, match=match):
        parse_grammar(text)


def test_comments_and_weights():
    g = parse_grammar("# tiny\nstart S\nterm a z^1 t^0  # letter\nS -> eps\nS -> a S * z^0 t^1\n")
    assert g.production_weight(g.productions[1]) == Weight(1, 1)
    assert list(start_series(g, 4)) == [1, 1, 2, 4, 8]


names = st.sampled_from(["A", "Bx", "Q1", "Zed"])


@st.composite
def grammars(draw):
    variables = draw(st.lists(names, min_size=1, max_size=3, unique=True))
    terms = [Terminal(f"t{i}", Weight(draw(st.integers(0, 2)), draw(st.integers(0, 2))))
             for i in range(draw(st.integers(1, 3)))]
    guard = Terminal("g", Weight(1, 0))
    prods = []
    for v in variables:
        prods.append(Production(v, ()))
        for _ in range(draw(st.integers(0, 2))):
            body = draw(st.lists(st.sampled_from(variables + [t.name for t in terms]), max_size=3))
            extra = Weight(draw(st.integers(0, 1)), draw(st.integers(0, 1)))
            prods.append(Production(v, ("g", *body), extra))
    return GrammarSystem(tuple(terms) + (guard,), tuple(prods), variables[0])


@given(grammars())
@settings(max_examples=60, deadline=None)
def test_random_grammar_roundtrip_and_solve(g):
    text = format_grammar(g)
    again = parse_grammar(text)
    assert format_grammar(again) == text
    values = solve_series(g, 8)
    sweeps, stable = fixed_point_sweeps(g, 8)
    assert values == sweeps
    assert all(not any(r) for r in residuals(g, values, 8).values())
