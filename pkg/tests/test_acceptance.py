"""Acceptance criteria 1-12, one test each.

Every test records a verdict line in VERDICTS before asserting, so the
terminal summary (see conftest.py) lists PASS/FAIL for all twelve even when
some fail.  Run as a script for the same listing without pytest.
"""
import itertools
import random

from braidhom import homology as hom
from braidhom.braid import _letters
from braidhom.hopf import check_coquasitriangular, check_yang_baxter
from braidhom.linalg import Echelon
from braidhom.models import (EXAMPLES, baez_commutativity_failures, central_failures, load_example,
                             oracle_failures, run_checks, transmutation_failures,
                             twist_suite)
from braidhom.ncalgebra import Window, add_scaled
from braidhom.scalars import make_field

VERDICTS = {}

SYM = make_field()
SPEC = make_field(2)


def record(k, desc, ok, detail=""):
    line = "criterion %2d: %s - %s" % (k, "PASS" if ok else "FAIL", desc)
    if detail:
        line += " [%s]" % detail
    VERDICTS[k] = line
    return ok


def letters(P):
    return [P.letter_mon(l) for l in _letters(P)]


def contains(columns, vec):
    e = Echelon()
    for c in columns:
        e.add(dict(c))
    return e.contains(vec)


# 1

def test_criterion_01_rform_suite():
    b = load_example("slq2_canonical", field=SYM)
    L = letters(b.pres)
    pairs = list(itertools.product(L, repeat=2))
    low = b.pres.enumerate_basis(Window(2))
    pairs += [(f, g) for f in low for g in low if (f, g) not in pairs]
    rng = random.Random(0)
    high = b.pres.enumerate_basis(Window(3))
    pairs += [(rng.choice(high), rng.choice(high)) for _ in range(50)]
    bad = check_coquasitriangular(b.rform, pairs)
    ybe = check_yang_baxter(b.rform, list(itertools.product(L, repeat=3)))
    ok = not bad and not ybe
    record(1, "r-form axioms and Yang-Baxter on C_q[SL(2)]", ok,
           "%d pairs, 64 triples, %d failures" % (len(pairs), len(bad) + len(ybe)))
    assert ok


# 2

def test_criterion_02_oracles():
    fails = {}
    for name in ["braided_line", "quantum_plane", "slq2_canonical", "slq2_baez", "braided_B"]:
        b = load_example(name, field=SYM)
        if b.oracle is None and "oracle_monomial" not in b.extras:
            continue
        f = oracle_failures(b, max_exp=5)
        if f:
            fails[name] = len(f)
    ok = not fails
    record(2, "engine braiding equals closed-form tables and monomial formulas", ok,
           "failures %s" % fails if fails else "")
    assert ok


# 3

def test_criterion_03_ribbon_suites():
    fails = {}
    for name in ["braided_line", "quantum_plane", "slq2_canonical", "slq2_baez", "braided_B"]:
        b = load_example(name, field=SYM)
        res = run_checks(b, ["ribbon", "naturality", "sigma-inverse"], window=4)
        fails.update({(name, k): len(v) for k, v in res.items() if v})
    baez = load_example("slq2_baez", field=SYM)
    mons = baez.pres.enumerate_basis(Window(3))
    pairs = list(itertools.product(mons[::3], mons[1::4]))
    if baez_commutativity_failures(baez, pairs):
        fails["baez mu Psi = mu"] = 1
    ok = not fails
    record(3, "ribbon relation, naturality, sigma inverse, Baez mu Psi = mu", ok,
           "failures %s" % fails if fails else "")
    assert ok


# 4

def line_hh_expectations(b, N, rep):
    """Dims and named generators for λ = q^-N on the line."""
    bad = []
    if rep.dims(2) != [2, 1, 0]:
        bad.append("dims %s" % rep.dims(2))
    if rep.by_degree(0) != {(0,): 1, (N + 1,): 1} or rep.by_degree(1) != {(N + 1,): 1}:
        bad.append("degrees %s %s" % (rep.by_degree(0), rep.by_degree(1)))
    ops = hom.ChainOps(b)
    one = b.field.one
    deg = (N + 1,)
    bases, maps = hom.bar_complex(ops, deg, N + 1, 1)
    # [x^(N+1)] is not in im b_1; x^N ⊗ x is a cycle outside im b_2
    i0 = bases[0].index(((N + 1,),))
    if contains(maps[1].columns, {i0: one}):
        bad.append("x^(N+1) is a boundary")
    key = ((N,), (1,))
    if ops.b({key: one}):
        bad.append("x^N⊗x is not a cycle")
    if contains(maps[2].columns, {bases[1].index(key): one}):
        bad.append("x^N⊗x is a boundary")
    return bad


def test_criterion_04_braided_line():
    problems = []
    generic = load_example("braided_line", lam="generic:3", field=SYM)
    rep = hom.hochschild_bar(generic, 2, 12, check_splitting=False)
    if rep.dims(2) != [1, 0, 0]:
        problems.append("generic HH %s" % rep.dims(2))
    hc = hom.cyclic_bicomplex(generic, 6, 12)
    if hc.dims(6) != [1, 0, 1, 0, 1, 0, 1]:
        problems.append("generic HC %s" % hc.dims(6))
    for N in range(4):
        b = load_example("braided_line", lam="qpow:%d" % (-2 * N), field=SYM)
        rep = hom.hochschild_bar(b, 2, 12, check_splitting=False)
        problems += ["N=%d %s" % (N, p) for p in line_hh_expectations(b, N, rep)]
        hc = hom.cyclic_bicomplex(b, 6, 12)
        if hc.dims(6) != [2, 0, 1, 0, 1, 0, 1]:
            problems.append("N=%d HC %s" % (N, hc.dims(6)))
    ok = not problems
    record(4, "braided line HH and HC, weights <= 12", ok, "; ".join(problems))
    assert ok


# 5

def test_criterion_05_quantum_plane():
    problems = []
    info = []
    generic = load_example("quantum_plane", lam="generic:3", field=SPEC)
    rep = hom.hochschild_bar(generic, 2, 12, check_splitting=False)
    if rep.dims(2) != [1, 0, 0]:
        problems.append("generic HH %s" % rep.dims(2))
    for N in range(4):
        b = load_example("quantum_plane", lam="qpow:%d" % -N, field=SPEC)
        bar = hom.hochschild_bar(b, 2, 12, check_splitting=False)
        tor = hom.tor_from_resolution(b, 12)
        # bar classes beyond weight N+1 sit at weight N+5, so the HC window must reach it
        hc = hom.cyclic_bicomplex(b, 6, N + 5)
        if hc.structural_failures:
            problems.append("N=%d mixed complex %s" % (N, hc.structural_failures))
        info.append("N=%d bar %s tor %s HC %s" % (N, bar.dims(2), tor.dims(2), hc.dims(6)))
        if bar.dims(2) != [N + 3, 2 * N + 2, N + 1]:
            problems.append("N=%d bar dims" % N)
        heavy = [r for r in bar.results if r["dim"] and sum(r["degree"]) > N + 1]
        if heavy:
            problems.append("N=%d classes above weight N+1" % N)
        if any(bar.by_degree(n) != tor.by_degree(n) for n in range(3)):
            problems.append("N=%d bar and resolution disagree per weight" % N)
        if hc.dims(6) != [N + 3, N, 2, 0, 2, 0, 2]:
            problems.append("N=%d HC" % N)
    ok = not problems
    record(5, "quantum plane HH, HC and bar/resolution agreement", ok,
           "; ".join(problems + info))
    assert ok


# 6

def test_criterion_06_xi_lemmas():
    out = {}
    line = load_example("braided_line", lam="qpow:-2", field=SYM)
    plane = load_example("quantum_plane", lam="qpow:-1", field=SYM)
    for b in (line, plane):
        f = hom.xi_lemma_failures(b, max_n=3, max_weight=6)
        if f:
            out[b.name] = sorted({name for name, _, _ in f})
    ok = not out
    record(6, "xi'xi = id and conjugation lemmas for n <= 3, weight <= 6", ok,
           "; ".join("%s: %s" % kv for kv in out.items()))
    assert ok


# 7

def test_criterion_07_ae_lemmas():
    bad = {}
    for name in EXAMPLES:
        b = load_example(name, field=SYM)
        # triple products in slq2_baez and braided_B grow fast; keep those to filtration 1
        depth = 1 if name in ("slq2_baez", "braided_B") else 2
        f = hom.ae_lemma_failures(b, samples=100, max_filtration=depth)
        if f:
            bad[name] = f
    ok = not bad
    record(7, "A^e action axioms and recovery formulas, 100 samples per bundle", ok,
           "; ".join("%s: %s" % kv for kv in bad.items()))
    assert ok


# 8

def slq2_identity_failures(F):
    """The five boundary identities used for HH_0 = 0, on small exponents."""
    b = load_example("slq2_canonical", field=F)
    P = b.pres
    ops = hom.ChainOps(b)
    one = F.one

    def q_half(h):
        return F.p(2 * h)

    def b1(chain):
        return {k[0]: v for k, v in ops.b(chain).items() if v}

    def clean(e):
        return {k: v for k, v in e.items() if v}

    a, bb, c, d = (1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, 0, 0)
    bad = set()
    for i, j, k in itertools.product(range(3), repeat=3):
        exp = {(i + 1, j, k): F.p(-4 * (j + k)) * (one - q_half(3 + i + j + 3 * k))}
        if b1({((i, j, k), a): one}) != clean(exp):
            bad.add(1)
    for j, k in itertools.product(range(4), repeat=2):
        exp = {(0, j, k + 1): one - q_half(3 - j + k)}
        if b1({((0, j, k), c): one}) != clean(exp):
            bad.add(2)
        exp = {}
        add_scaled(exp, {(0, j, k): one}, F.p(-4 * (j + k + 1)) * (one - q_half(j + 3 * k + 5)))
        add_scaled(exp, P.multiply({(0, 1, 1): one}, {(0, j, k): one}),
                   F.p(-4 * (j + k + 2)) * (one - q_half(j + 3 * k + 9)))
        if b1({((-1, j, k), a): one}) != clean(exp):
            bad.add(3)
    if b1({(bb, bb): one}) != {(0, 2, 0): q_half(1)}:
        bad.add(4)
    chain = {(d, a): one, (bb, c): -F.p(-4) * (one + F.p(4) + F.p(8))}
    if b1(chain) != {P.one_mon: one}:
        bad.add(5)
    return sorted(bad)


def test_criterion_08_slq2_hh0():
    b = load_example("slq2_canonical", field=SPEC)
    P = b.pres
    targets = P.enumerate_basis(Window(4))
    certs = hom.boundary_certificates(b, 6, targets)
    ops = hom.ChainOps(b)
    missing = [P.mon_str(m) for m, pre in certs.items() if pre is None]
    wrong = [P.mon_str(m) for m, pre in certs.items()
             if pre is not None and ops.b(pre) != {(m,): b.field.one}]
    ids = slq2_identity_failures(SYM)
    ok = not missing and not wrong and not ids
    detail = "%d/%d monomials certified" % (len(targets) - len(missing) - len(wrong), len(targets))
    if ids:
        detail += "; boundary identities %s differ" % ids
    record(8, "C_q[SL(2)] HH_0 = 0 certificates and boundary identities", ok, detail)
    assert ok


# 9

def test_criterion_09_braided_b():
    problems = []
    if transmutation_failures(SYM):
        problems.append("transmutation")
    b = load_example("braided_B", field=SYM)
    P = b.pres
    one = b.field.one
    t = {P.gen("u"): one, P.gen("z"): one}
    if central_failures(b, t, 6):
        problems.append("t not central")
    if b.resolution.composite_failures():
        problems.append("resolution composites")
    ops = hom.ChainOps(b)
    u = P.gen("u")
    for i, j, k in itertools.product(range(3), repeat=3):
        if ops.r_action_mon((i, 0, j, k), u) != {(i, 0, j, k): b.field.p(-8 * i)}:
            problems.append("x^i u^j z^k ◀ u")
            break
    for i, j, k in itertools.product(range(3), repeat=3):
        if ops.r_action_mon((0, i, j, k), u) != {(0, i, j, k): b.field.p(8 * i)}:
            problems.append("y^i u^j z^k ◀ u")
            break
    bs = load_example("braided_B", field=SPEC)
    dims = []
    for D in range(4, 11):
        mons, ker = hom.filtered_tensored_kernel(bs, 3, D)
        dims.append(len(ker))
        if len(ker) == 1 and set(ker[0]) != {bs.pres.one_mon}:
            problems.append("kernel at D=%d is not spanned by 1" % D)
    if dims != [1] * 7:
        problems.append("ker dims for D=4..10 are %s" % dims)
    ok = not problems
    record(9, "braided B: transmutation, centrality, resolution, HH_3 kernel, R-action", ok,
           "; ".join(problems))
    assert ok


# 10

def test_criterion_10_twisting():
    res = twist_suite(SYM, window=3, samples=30, exponent="printed")
    keys = ["r=dphi", "d(phi^2)=theta", "banal", "theta-twist"]
    bad = {k: len(res[k]) for k in keys if res[k]}
    ok = not bad
    record(10, "twisting by the printed varphi", ok,
           "failures %s; phibar^2 vs s: %d" % (bad, len(res["phibar^2=s"])) if bad else "")
    assert ok


# 11

def test_criterion_11_counterexample():
    b = load_example("toy3", field=SYM)
    P = b.pres
    witness = {(P.one_mon, P.gen("x")): b.field.one}
    dim, rep = hom.counterexample_h1(b, witness)
    ok = dim >= 1 and rep == {"in_C1": True, "cycle": True, "boundary": False}
    record(11, "toy3 has H_1(C^1) != 0, witnessed by [1 ⊗ x]", ok, "dim %d" % dim)
    assert ok


# 12

def structural_failures(b, max_weight, max_n, bprime_weight, split_weight):
    ops = hom.ChainOps(b)
    bad = []
    for deg in hom.graded_degrees(b.pres, max_weight):
        D = sum(deg)
        # b² on the normalized complex (homology_dims raises on failure)
        try:
            bases, maps = hom.bar_complex(ops, deg, D, max_n)
            hom.homology_dims(maps, [len(x) for x in bases], b.field)
        except hom.NotAComplex:
            bad.append((deg, "b^2"))
        if D <= split_weight:
            for n in range(max_n + 2):
                try:
                    hom.check_t_splitting(ops, bases[n])
                except hom.NotDiagonalizable:
                    bad.append((deg, "T-splitting %d" % n))
        if D <= bprime_weight:
            raw = [hom.chain_basis(b.pres, n, deg, D) for n in range(max_n + 2)]
            bp = [None] + [hom.assemble_operator(ops.b_prime_key, raw[n], raw[n - 1])
                           for n in range(1, max_n + 2)]
            for n in range(2, max_n + 2):
                if not bp[n - 1].compose(bp[n]).is_zero():
                    bad.append((deg, "b'^2 at %d" % n))
    return bad


def test_criterion_12_structural():
    problems = []
    for N in range(4):
        b = load_example("braided_line", lam="qpow:%d" % (-2 * N), field=SYM)
        problems += [("line", N, f) for f in structural_failures(b, 12, 2, 12, 12)]
        hc = hom.cyclic_bicomplex(b, 6, 12)
        problems += [("line HC", N, f) for f in hc.structural_failures]
    for lam in ["generic:3"] + ["qpow:%d" % -N for N in range(4)]:
        b = load_example("quantum_plane", lam=lam, field=SPEC)
        problems += [("plane", lam, f) for f in structural_failures(b, 12, 2, 6, 8)]
        hc = hom.cyclic_bicomplex(b, 6, 6)
        problems += [("plane HC", lam, f) for f in hc.structural_failures]
    ok = not problems
    record(12, "b^2, b'^2, B^2, bB+Bb and T-splitting on the windows above", ok,
           "; ".join(map(str, problems[:5])))
    assert ok


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass
    for k in sorted(VERDICTS):
        print(VERDICTS[k])
