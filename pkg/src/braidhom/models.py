"""Catalog of built-in examples.

Each presentation is stored in the same JSON-shaped document format that
user files use, so the parser is exercised by every built-in.
"""

from .braid import (BaezBraiding, EngineBraiding, FlipBraiding, FunctionalRibbon, Ribbon,
                    TableBraiding, Transmutation, check_ribbon_relation, letter_table)
from .hopf import (Coaction, Functional, HopfData, RForm, check_coquasitriangular,
                   parse_tensor)
from .ncalgebra import (AlgebraError, add_scaled, add_term, presentation_from_dict, scale)
from .scalars import make_field

LINE = {
    "name": "line",
    "generators": ["x"],
    "exponents": ["nat"],
    "rules": [],
    "grading": [[1]],
    "filtration": [1],
}

PLANE = {
    "name": "plane",
    "generators": ["x", "y"],
    "exponents": ["nat", "nat"],
    "rules": [{"lhs": "y*x", "rhs": "q*x*y"}],
    "grading": [[1, 0], [0, 1]],
    "filtration": [1, 1],
}

# torus weights: left weight a,b -> +1, c,d -> -1; right weight a,c -> +1, b,d -> -1
SLQ2 = {
    "name": "slq2",
    "generators": ["a", "b", "c"],
    "exponents": ["int", "nat", "nat"],
    "aliases": {"d": ["a", -1]},
    "rules": [
        {"lhs": "b*a", "rhs": "q^-1*a*b"},
        {"lhs": "c*a", "rhs": "q^-1*a*c"},
        {"lhs": "b*d", "rhs": "q*d*b"},
        {"lhs": "c*d", "rhs": "q*d*c"},
        {"lhs": "c*b", "rhs": "b*c"},
        {"lhs": "a*d", "rhs": "1 + q*b*c"},
        {"lhs": "d*a", "rhs": "1 + q^-1*b*c"},
    ],
    "grading": [[1, 1], [1, -1], [-1, 1]],
    "filtration": [1, 1, 1],
}

BRAIDED_SLQ2 = {
    "name": "braided_slq2",
    "generators": ["x", "y", "u", "z"],
    "exponents": ["nat", "nat", "nat", "nat"],
    "rules": [
        {"lhs": "u*x", "rhs": "q^2*x*u"},
        {"lhs": "u*y", "rhs": "q^-2*y*u"},
        {"lhs": "z*x", "rhs": "x*z + (1-p^8)*x*u"},
        {"lhs": "z*y", "rhs": "y*z + (1-p^-8)*y*u"},
        {"lhs": "z*u", "rhs": "u*z"},
        {"lhs": "y*x", "rhs": "u^2 + (1+p^8)*u*z - 1"},
        {"lhs": "x*y", "rhs": "u^2 + (1+p^-8)*u*z - 1"},
    ],
    "grading": [[1], [-1], [0], [0]],
    "filtration": [1, 1, 1, 1],
}

TOY3 = {
    "name": "toy3",
    "generators": ["x", "y"],
    "exponents": ["nat", "nat"],
    "rules": [
        {"lhs": "x*x", "rhs": "0"},
        {"lhs": "x*y", "rhs": "0"},
        {"lhs": "y*x", "rhs": "0"},
        {"lhs": "y*y", "rhs": "0"},
    ],
    "grading": [[1], [1]],
    "filtration": [1, 1],
}

# group algebra of Z, the Hopf algebra coacting on the braided line
CZ = {
    "name": "cz",
    "generators": ["t"],
    "exponents": ["int"],
    "rules": [
        {"lhs": "t*t^-1", "rhs": "1"},
        {"lhs": "t^-1*t", "rhs": "1"},
    ],
    "grading": [[1]],
    "filtration": [1],
}

PRESENTATIONS = {
    "line": LINE,
    "plane": PLANE,
    "slq2": SLQ2,
    "braided_slq2": BRAIDED_SLQ2,
    "toy3": TOY3,
    "cz": CZ,
}




class UnknownExample(KeyError):
    pass


class AxiomViolation(AlgebraError):
    pass


class NotInOracle(AlgebraError):
    pass


class NoResolution(AlgebraError):
    pass


class ArityMismatch(AlgebraError):
    pass


def presentation(name, field=None):
    return presentation_from_dict(PRESENTATIONS[name], field or make_field())


def letter(pres, name):
    return pres.last_letter(pres.gen(name))


def _tensor_table(pres, entries, other=None):
    other = other or pres
    return {letter(pres, k): parse_tensor(v, [pres, other]) for k, v in entries.items()}


def _pair_table(pres, entries):
    out = {}
    for (l, r), v in entries.items():
        out[(letter(pres, l), letter(pres, r))] = parse_tensor(v, [pres, pres])
    return out


def _element_table(pres, entries):
    return {letter(pres, k): pres.parse_element(v) for k, v in entries.items()}


def _scalar_table(pres, entries):
    return {letter(pres, k): pres.field(v) if not isinstance(v, int) else pres.field.one * v
            for k, v in entries.items()}


# symmetry Hopf algebras

def cz_hopf(field):
    """Group algebra of Z with r(t^m, t^n) = q^{mn}."""
    H = presentation("cz", field)
    hopf = HopfData(
        H,
        _tensor_table(H, {"t": "t ⊗ t", "t^-1": "t^-1 ⊗ t^-1"}),
        _scalar_table(H, {"t": 1, "t^-1": 1}),
        _element_table(H, {"t": "t^-1", "t^-1": "t"}),
        _element_table(H, {"t": "t^-1", "t^-1": "t"}),
    )
    t, ti = letter(H, "t"), letter(H, "t^-1")
    q = field.p(4)
    table = {(t, t): q, (t, ti): 1 / q, (ti, t): 1 / q, (ti, ti): q}
    return hopf, RForm(hopf, table)


SLQ2_COPRODUCT = {
    "a": "a ⊗ a + b ⊗ c",
    "b": "a ⊗ b + b ⊗ d",
    "c": "c ⊗ a + d ⊗ c",
    "d": "c ⊗ b + d ⊗ d",
}
SLQ2_ANTIPODE = {"a": "d", "b": "-q^-1*b", "c": "-q*c", "d": "a"}
SLQ2_ANTIPODE_INV = {"a": "d", "b": "-q*b", "c": "-q^-1*c", "d": "a"}
SLQ2_RFORM = {
    ("a", "a"): "q^(1/2)", ("a", "d"): "q^(-1/2)",
    ("d", "a"): "q^(-1/2)", ("d", "d"): "q^(1/2)",
    ("c", "b"): "q^(-1/2)*(q-q^-1)",
}


def slq2_hopf(field):
    H = presentation("slq2", field)
    hopf = HopfData(
        H,
        _tensor_table(H, SLQ2_COPRODUCT),
        _scalar_table(H, {"a": 1, "b": 0, "c": 0, "d": 1}),
        _element_table(H, SLQ2_ANTIPODE),
        _element_table(H, SLQ2_ANTIPODE_INV),
    )
    table = {(letter(H, f), letter(H, g)): H.field(_coeff(v)) for (f, g), v in SLQ2_RFORM.items()}
    return hopf, RForm(hopf, table)


def _coeff(text):
    from .ncalgebra import parse_coefficient
    return parse_coefficient(text)


def ribbon_functional(hopf, rform, value):
    """The coribbon functional s with s(a) = s(d) = value, s(b) = s(c) = 0.

    Extended by s(fg) = s(f1) s(g1) θ(f2, g2), splitting off the last letter.
    """
    H = hopf.pres
    field = H.field
    gens = {letter(H, "a"): value, letter(H, "d"): value,
            letter(H, "b"): field.zero, letter(H, "c"): field.zero}
    cache = {}

    def rule(m):
        hit = cache.get(m)
        if hit is not None:
            return hit
        split = H.split_last(m)
        if split is None:
            res = field.one
        else:
            rest, l = split
            if not any(rest):
                res = gens[l]
            else:
                lm = H.letter_mon(l)
                res = field.zero
                for (f1, f2), x in hopf.coproduct_mon(rest).items():
                    sf = rule(f1)
                    if not sf:
                        continue
                    for (g1, g2), y in hopf.coproduct_mon(lm).items():
                        sg = rule(g1)
                        if sg:
                            res = res + x * y * sf * sg * rform.theta(f2, g2)
        cache[m] = res
        return res

    return Functional(hopf, rule=rule, name="s")


def varphi_functional(hopf, beta, gamma, exponent="printed"):
    """φ(a^{i+1} b^j c^k) = 0 = φ(d^{i+1} b^j c^k), φ(b^j c^k) = q^{e/4} β^j γ^k.

    exponent="printed": e = (j+k)(1-j-k);  exponent="coboundary": e = j+k-(j-k)^2,
    the exponent for which ∂φ reproduces the r-form on every generator pair.
    """
    field = hopf.field
    if exponent not in ("printed", "coboundary"):
        raise AlgebraError("unknown exponent rule %r" % exponent)

    def rule(m):
        i, j, k = m
        if i != 0:
            return field.zero
        if exponent == "printed":
            e = (j + k) * (1 - j - k)
        else:
            e = j + k - (j - k) ** 2
        return field.p(e) * beta ** j * gamma ** k

    return Functional(hopf, rule=rule, name="varphi")


# braiding tables from the closed forms

LINE_BRAIDING = {("x", "x"): "q*x ⊗ x"}

PLANE_BRAIDING = {
    ("x", "x"): "q^(1/2)*x ⊗ x",
    ("x", "y"): "q^(-1/2)*y ⊗ x",
    ("y", "x"): "q^(-1/2)*x ⊗ y + q^(-1/2)*(q-q^-1)*y ⊗ x",
    ("y", "y"): "q^(1/2)*y ⊗ y",
}

SLQ2_BRAIDING = {
    ("a", "a"): "q^(1/2)*a ⊗ a",
    ("a", "b"): "q^(-1/2)*b ⊗ a + q^(-1/2)*(q-q^-1)*a ⊗ b",
    ("a", "c"): "q^(1/2)*c ⊗ a",
    ("a", "d"): "q^(-1/2)*d ⊗ a + q^(-1/2)*(q-q^-1)*c ⊗ b",
    ("b", "a"): "q^(-1/2)*a ⊗ b",
    ("b", "b"): "q^(1/2)*b ⊗ b",
    ("b", "c"): "q^(-1/2)*c ⊗ b",
    ("b", "d"): "q^(1/2)*d ⊗ b",
    ("c", "a"): "q^(1/2)*a ⊗ c",
    ("c", "b"): "q^(-1/2)*b ⊗ c + q^(-1/2)*(q-q^-1)*a ⊗ d",
    ("c", "c"): "q^(1/2)*c ⊗ c",
    ("c", "d"): "q^(-1/2)*d ⊗ c + q^(-1/2)*(q-q^-1)*c ⊗ d",
    ("d", "a"): "q^(-1/2)*a ⊗ d",
    ("d", "b"): "q^(1/2)*b ⊗ d",
    ("d", "c"): "q^(-1/2)*c ⊗ d",
    ("d", "d"): "q^(1/2)*d ⊗ d",
}

# f(2) = q^2 - q^-2
B_BRAIDING = {
    ("x", "x"): "q^2*x ⊗ x",
    ("x", "y"): "q^-2*y ⊗ x",
    ("x", "z"): "z ⊗ x",
    ("x", "u"): "u ⊗ x",
    ("y", "x"): "q^-2*x ⊗ y + (1-q^-2)*(q^2-q^-2)*y ⊗ x - (1+q^-2)*(q^2-q^-2)*z ⊗ z",
    ("y", "y"): "q^2*y ⊗ y",
    ("y", "z"): "z ⊗ y + (q^2-q^-2)*y ⊗ z",
    ("y", "u"): "u ⊗ y - (q^2-q^-2)*y ⊗ z",
    ("z", "x"): "x ⊗ z + (q^2-q^-2)*z ⊗ x",
    ("z", "y"): "y ⊗ z",
    ("z", "z"): "z ⊗ z + (q^-2-1)*y ⊗ x",
    ("z", "u"): "u ⊗ z + (1-q^-2)*y ⊗ x",
    ("u", "x"): "x ⊗ u - (q^2-q^-2)*z ⊗ x",
    ("u", "y"): "y ⊗ u",
    ("u", "z"): "z ⊗ u + (1-q^-2)*y ⊗ x",
    ("u", "u"): "u ⊗ u + (q^-2-1)*y ⊗ x",
}

B_COPRODUCT = {
    "u": "u ⊗ u + q^-2*y ⊗ x",
    "x": "x ⊗ u + u ⊗ x + (1+q^-2)*z ⊗ x",
    "y": "y ⊗ u + u ⊗ y + (1+q^-2)*y ⊗ z",
    "z": "z ⊗ u + u ⊗ z + (1+q^-2)*z ⊗ z + (1+q^2)^-1*x ⊗ y - (1+q^2)^-1*y ⊗ x",
}
# Δ(z) with the x⊗y coefficient (1+q^-2)^-1 as printed in the source; it is not
# coassociative, while (1+q^2)^-1 is what Δ(q(a-d)/(q+q^-1)) gives
B_COPRODUCT_Z_PRINTED = ("z ⊗ u + u ⊗ z + (1+q^-2)*z ⊗ z + (1+q^-2)^-1*x ⊗ y"
                         " - (1+q^-2)^-1*y ⊗ x")
B_ANTIPODE = {"u": "u + (1+q^2)*z", "x": "-q^2*x", "y": "-q^2*y", "z": "-q^2*z"}
B_ANTIPODE_INV = {"u": "u + (1+q^-2)*z", "x": "-q^-2*x", "y": "-q^-2*y", "z": "-q^-2*z"}

# generator change from the transmuted SL(2): u = d, x = qb, y = qc, z = q(a - d)/(q + q^-1)
B_IN_SLQ2 = {"u": "d", "x": "q*b", "y": "q*c", "z": "q*(q+q^-1)^-1*a - q*(q+q^-1)^-1*d"}
SLQ2_IN_B = {"a": "u + (1+q^-2)*z", "b": "q^-1*x", "c": "q^-1*y", "d": "u"}

# the resolution of the trivial module over B, as row-vector matrices
B_RESOLUTION = [
    [["x"], ["y"], ["u - 1"]],
    [["q^-2*u - 1", "0", "-x"], ["0", "q^2*u - 1", "-y"], ["-y", "q^2*x", "(1-q^2)*u + (1-q^2)"]],
    [["y", "-q^2*x", "u - 1"]],
]
# the same matrix with the (1,1) entry exactly as printed in the source display
B_RESOLUTION_PRINTED_PHI2_11 = "q^-2*u"


class Resolution:
    """Free resolution of the trivial module by free left modules.

    maps[k] is the matrix of φ_{k+1}: P_{k+1} -> P_k acting on row vectors,
    (a_1, ..., a_r) ↦ (Σ_i a_i M_ij)_j, with entries in the algebra.
    """

    def __init__(self, pres, maps, name="resolution"):
        self.pres = pres
        self.maps = maps
        self.name = name
        self.ranks = [len(maps[0][0])] + [len(M) for M in maps]

    def composite_failures(self):
        """Entries of φ_k φ_{k+1} that are nonzero, plus ε∘φ_1 if nonzero."""
        P = self.pres
        bad = []
        for k in range(len(self.maps) - 1):
            upper, lower = self.maps[k + 1], self.maps[k]
            for i, row in enumerate(upper):
                for j in range(len(lower[0])):
                    acc = {}
                    for l, entry in enumerate(row):
                        add_scaled(acc, P.multiply(entry, lower[l][j]), P.field.one)
                    if acc:
                        bad.append((k + 1, i, j))
        return bad


def _matrix(pres, rows):
    return [[pres.parse_element(e) for e in row] for row in rows]


# bundles

class Bundle:
    """Everything one example needs: algebra, braiding, ribbon, Hopf data, resolution."""

    def __init__(self, name, pres, braiding, sigma, hopf=None, symmetry=None, rform=None,
                 coaction=None, engine=None, oracle=None, resolution=None, lam=None,
                 sign=1, grading="multidegree", description=""):
        self.name = name
        self.pres = pres
        self.field = pres.field
        self.braiding = braiding
        self.sigma = sigma
        self.hopf = hopf
        self.symmetry = symmetry
        self.rform = rform
        self.coaction = coaction
        self.engine = engine
        self.oracle = oracle
        self.resolution = resolution
        self.lam = lam
        self.sign = sign
        self.grading = grading
        self.description = description
        self.extras = {}

    def oracle_braiding(self, left, right):
        """Closed-form Ψ(left ⊗ right) where a closed form is catalogued."""
        fn = self.extras.get("oracle_monomial")
        if fn is not None:
            res = fn(left, right)
            if res is not None:
                return res
        P = self.pres
        if P.length(left) == 1 and P.length(right) == 1 and self.oracle is not None:
            key = (P.last_letter(left), P.last_letter(right))
            if key in self.oracle:
                return self.oracle[key]
        raise NotInOracle("no closed form for Ψ(%s ⊗ %s)" % (P.mon_str(left), P.mon_str(right)))

    def block_key(self, m):
        return self.pres.multidegree(m)


def parse_lambda(spec, field):
    """λ-selector "generic:<scalar>" or "qpow:<k>" (λ = q^{k/2}); returns (λ, label)."""
    if spec is None:
        spec = "generic:3"
    if not isinstance(spec, str):
        return field(spec), field.fmt(field(spec))
    kind, _, val = spec.partition(":")
    if kind == "generic":
        lam = field(_coeff(val))
    elif kind == "qpow":
        lam = field.p(2 * int(val))
    else:
        raise AlgebraError("unknown lambda selector %r" % spec)
    if not lam:
        raise AlgebraError("lambda must be nonzero")
    return lam, spec


def load_example(name, lam=None, sign=1, field=None, check=True, variant=None):
    """Build a catalogued bundle.

    variant="hopf" (quantum_plane only) rescales the braiding by q^{3/2}, which
    makes the primitive coproduct a braided algebra map.
    """
    if field is None:
        field = make_field()
    builders = {
        "braided_line": _line,
        "quantum_plane": _plane,
        "slq2_canonical": _slq2_canonical,
        "slq2_baez": _slq2_baez,
        "braided_B": _braided_b,
        "toy3": _toy3,
    }
    if name not in builders:
        raise UnknownExample(name)
    if sign not in (1, -1):
        raise AlgebraError("sign must be +1 or -1")
    if variant is not None:
        if (name, variant) != ("quantum_plane", "hopf"):
            raise UnknownExample("%s has no variant %r" % (name, variant))
        bundle = _plane(field, lam, sign, hopf_normalized=True)
    else:
        bundle = builders[name](field, lam, sign)
    if check:
        problem = build_checks(bundle)
        if problem:
            raise AxiomViolation("%s: %s" % (name, problem))
    return bundle


EXAMPLES = ["braided_line", "quantum_plane", "slq2_canonical", "slq2_baez", "braided_B", "toy3"]


def _line(field, lam, sign):
    P = presentation("line", field)
    lam, label = parse_lambda(lam, field)
    H, r = cz_hopf(field)
    x = P.gen("x")
    coaction = Coaction(P, H, _tensor_table(P, {"x": "x ⊗ t"}, H.pres))
    oracle = _pair_table(P, LINE_BRAIDING)
    braiding = TableBraiding(P, oracle, name="oracle")
    hopf = HopfData(P, _tensor_table(P, {"x": "x ⊗ 1 + 1 ⊗ x"}), _scalar_table(P, {"x": 0}),
                    _element_table(P, {"x": "-x"}), _element_table(P, {"x": "-x"}),
                    braiding=braiding)
    sigma = Ribbon(P, braiding, {letter(P, "x"): {x: lam}})
    res = Resolution(P, [_matrix(P, [["x"]])], name="line")
    b = Bundle("braided_line", P, braiding, sigma, hopf=hopf, symmetry=H, rform=r,
               coaction=coaction, engine=EngineBraiding(coaction, coaction, r), oracle=oracle,
               resolution=res, lam=lam, description="C[x], coacted on by CZ via x -> x ⊗ t")
    b.extras["lambda_label"] = label
    q = field.p(4)

    def mono(left, right):
        if P.length(left) and P.length(right):
            return {(right, left): q ** (left[0] * right[0])}
        return None

    b.extras["oracle_monomial"] = mono
    return b


PLANE_COACTION = {"x": "y ⊗ b + x ⊗ d", "y": "y ⊗ a + x ⊗ c"}


def plane_monomial_oracle(P, left, right):
    """The closed forms for Ψ(x^m y^n ⊗ x), Ψ(x^m y^n ⊗ y), Ψ(x ⊗ x^m y^n), Ψ(y ⊗ x^m y^n)."""
    field = P.field

    def qh(k):  # q^{k/2}
        return field.p(2 * k)

    def f(n):
        return field.p(4 * n) - field.p(-4 * n)

    X, Y = (1, 0), (0, 1)
    out = {}
    if right in (X, Y):
        m, n = left
        if right == X:
            add_term(out, (X, left), qh(m - n))
            if n > 0:
                add_term(out, (Y, (m + 1, n - 1)), qh(n - m - 2) * f(n))
        else:
            add_term(out, (Y, left), qh(n - m))
        return out
    if left in (X, Y):
        m, n = right
        if left == X:
            add_term(out, (right, X), qh(m - n))
        else:
            add_term(out, (right, Y), qh(n - m))
            if m > 0:
                add_term(out, ((m - 1, n + 1), X), qh(m - n - 2) * f(m))
        return out
    return None


PLANE_HOPF_BRAIDING = {
    ("x", "x"): "q^2*x ⊗ x",
    ("x", "y"): "q*y ⊗ x",
    ("y", "x"): "q*x ⊗ y + (q^2-1)*y ⊗ x",
    ("y", "y"): "q^2*y ⊗ y",
}


def _plane(field, lam, sign, hopf_normalized=False):
    P = presentation("plane", field)
    lam, label = parse_lambda(lam, field)
    H, r = slq2_hopf(field)
    coaction = Coaction(P, H, _tensor_table(P, PLANE_COACTION, H.pres))
    if hopf_normalized:
        oracle = _pair_table(P, PLANE_HOPF_BRAIDING)
        braiding = TableBraiding(P, oracle, name="hopf-normalized")
    else:
        oracle = _pair_table(P, PLANE_BRAIDING)
        braiding = TableBraiding(P, oracle, name="oracle")
    hopf = HopfData(P, _tensor_table(P, {"x": "x ⊗ 1 + 1 ⊗ x", "y": "y ⊗ 1 + 1 ⊗ y"}),
                    _scalar_table(P, {"x": 0, "y": 0}),
                    _element_table(P, {"x": "-x", "y": "-y"}),
                    _element_table(P, {"x": "-x", "y": "-y"}), braiding=braiding)
    sigma = Ribbon(P, braiding, {letter(P, "x"): {P.gen("x"): lam},
                                 letter(P, "y"): {P.gen("y"): lam}})
    res = Resolution(P, [_matrix(P, [["x"], ["y"]]), _matrix(P, [["y", "-q*x"]])], name="koszul")
    b = Bundle("quantum_plane", P, braiding, sigma, hopf=hopf, symmetry=H, rform=r,
               coaction=coaction, engine=EngineBraiding(coaction, coaction, r), oracle=oracle,
               resolution=res, lam=lam,
               description="Manin plane yx = qxy as a C_q[SL(2)]-comodule algebra")
    b.extras["lambda_label"] = label
    if hopf_normalized:
        b.engine = None
        b.name = "quantum_plane[hopf]"
    else:
        b.extras["oracle_monomial"] = lambda left, right: plane_monomial_oracle(P, left, right)
    b.extras["embedding"] = {"y": "a", "x": "b"}
    return b


def _slq2_common(field):
    hopf, r = slq2_hopf(field)
    P = hopf.pres
    coaction = Coaction(P, hopf, {l: hopf.coproduct_mon(P.letter_mon(l))
                                  for l in (letter(P, n) for n in "abcd")})
    return hopf, r, coaction


def _slq2_canonical(field, lam, sign):
    hopf, r, coaction = _slq2_common(field)
    P = hopf.pres
    oracle = _pair_table(P, SLQ2_BRAIDING)
    braiding = TableBraiding(P, oracle, name="oracle")
    v = field.p(6) * sign
    sigma = Ribbon(P, braiding, {letter(P, n): scale(P.gen(n) and {P.gen(n): field.one}, v)
                                 for n in "abcd"})
    b = Bundle("slq2_canonical", P, braiding, sigma, hopf=hopf, symmetry=hopf, rform=r,
               coaction=coaction, engine=EngineBraiding(coaction, coaction, r), oracle=oracle,
               sign=sign, description="C_q[SL(2)] with its canonical braiding")
    s = ribbon_functional(hopf, r, v)
    b.extras["ribbon_functional"] = s
    b.extras["functional_sigma"] = FunctionalRibbon(coaction, s)
    return b


def _slq2_baez(field, lam, sign):
    hopf, r, coaction = _slq2_common(field)
    P = hopf.pres
    braiding = BaezBraiding(r)
    sigma = Ribbon(P, braiding, {letter(P, n): {P.gen(n): field.one} for n in "abcd"},
                   name="identity")
    return Bundle("slq2_baez", P, braiding, sigma, hopf=hopf, symmetry=hopf, rform=r,
                  description="C_q[SL(2)] with the H^cop ⊗ H braiding; sigma = id")


def b_monomial_oracle(P, left, right):
    """Closed forms for Ψ(x^i u^j z^k ⊗ t), Ψ(y^i u^j z^k ⊗ t) with t = y or u."""
    field = P.field
    q = field.p(4)
    X, Y, U = P.gen("x"), P.gen("y"), P.gen("u")
    if right not in (Y, U) or P.length(left) == 0:
        return None
    i_x, i_y, j, k = left
    out = {}
    one = field.one
    if right == Y:
        i = i_x or i_y
        c = q ** (-2 * i) if i_x else q ** (2 * i)
        return {(Y, left): c}
    add_term(out, (U, left), one)
    if i_x:
        i = i_x
        inner = _u_shift_bracket_x(P, j, k)
        xi = {(i, 0, 0, 0): one}
        for m, c in P.multiply(xi, inner).items():
            add_term(out, (Y, m), q ** (-2 * i) * c)
        return out
    if i_y:
        i = i_y
        # (1 - q^{2i}) y ⊗ y^{i-1} u^j z^k [(1 + q^-2) z + (q^-2 - q^{-2i}) u]
        base = {(0, i - 1, j, k): one}
        tail = {P.gen("z"): 1 + q ** -2, U: q ** -2 - q ** (-2 * i)}
        for m, c in P.multiply(base, tail).items():
            add_term(out, (Y, m), (1 - q ** (2 * i)) * c)
        # q^{2i} y ⊗ y^i u^-1 [x u^j z^k - u^j z^k x]
        inner = _u_shift_bracket_x(P, j, k)
        yi = {(0, i, 0, 0): one}
        for m, c in P.multiply(yi, inner).items():
            add_term(out, (Y, m), q ** (2 * i) * c)
        return out
    # left = u^j z^k
    inner = _u_shift_bracket_x(P, j, k)
    for m, c in inner.items():
        add_term(out, (Y, m), c)
    return out


def _u_shift_bracket_x(P, j, k):
    """u^-1[x u^j z^k - u^j z^k x] = q^-2 x u^{j-1} z^k - u^{j-1} z^k x.

    Written as q^-2 x u^{j-1} [z^k - q^{2j} (z + (1-q^2) u)^k], which has no
    negative u-power after expansion even for j = 0.
    """
    field = P.field
    q = field.p(4)
    one = field.one
    z = P.gen("z")
    u = P.gen("u")
    shifted = {z: one, u: 1 - q ** 2}
    power = dict(P.unit)
    for _ in range(k):
        power = P.multiply(power, shifted)
    bracket = {}
    add_term(bracket, (0, 0, j, k), one)
    add_scaled(bracket, P.multiply({(0, 0, j, 0): one}, power), -q ** (2 * j))
    # now divide by u once (all remaining terms carry u or cancel)
    poly = {}
    for m, c in bracket.items():
        if m[2] == 0:
            raise AlgebraError("bracket is not divisible by u")
        add_term(poly, (0, 0, m[2] - 1, m[3]), c)
    return P.multiply({P.gen("x"): q ** -2}, poly)


def _braided_b(field, lam, sign):
    P = presentation("braided_slq2", field)
    oracle = _pair_table(P, B_BRAIDING)
    braiding = TableBraiding(P, oracle, name="oracle")
    hopf = HopfData(P, _tensor_table(P, B_COPRODUCT), _scalar_table(P, {"u": 1, "x": 0, "y": 0, "z": 0}),
                    _element_table(P, B_ANTIPODE), _element_table(P, B_ANTIPODE_INV),
                    braiding=braiding)
    q = field.p(4)
    s = field.one * sign
    values = {
        letter(P, "u"): {P.gen("u"): s, P.gen("z"): s * (1 - q ** 4)},
        letter(P, "x"): {P.gen("x"): s * q ** 4},
        letter(P, "y"): {P.gen("y"): s * q ** 4},
        letter(P, "z"): {P.gen("z"): s * q ** 4},
    }
    sigma = Ribbon(P, braiding, values)
    res = Resolution(P, [_matrix(P, rows) for rows in B_RESOLUTION], name="free_B")
    H, r = slq2_hopf(field)
    b = Bundle("braided_B", P, braiding, sigma, hopf=hopf, symmetry=H, rform=r, oracle=oracle,
               resolution=res, sign=sign, grading="filtered",
               description="transmuted braided SL(2) with generators u, x, y, z")
    b.extras["oracle_monomial"] = lambda left, right: b_monomial_oracle(P, left, right)
    b.extras["transmutation"] = Transmutation(r)
    return b


def _toy3(field, lam, sign):
    P = presentation("toy3", field)
    braiding = FlipBraiding(P)
    x, y = P.gen("x"), P.gen("y")
    sigma = Ribbon(P, braiding, {letter(P, "x"): {x: field.one},
                                 letter(P, "y"): {x: field.one, y: field.one}})
    return Bundle("toy3", P, braiding, sigma,
                  description="span{1, x, y} with all products of x, y zero, flip braiding")


# transmutation helpers for the braided SL(2)

class GeneratorChange:
    """Identifies the braided algebra B with the vector space of C_q[SL(2)].

    B monomials go to H by multiplying generator images with the transmuted
    product; H letters go back through the inverse substitution.
    """

    def __init__(self, bundle_b, transmutation):
        self.B = bundle_b.pres
        self.T = transmutation
        self.H = transmutation.H
        self.to_h_gen = {letter(self.B, k): self.H.parse_element(v) for k, v in B_IN_SLQ2.items()}
        self.to_b_gen = {letter(self.H, k): self.B.parse_element(v) for k, v in SLQ2_IN_B.items()}
        self._cache = {}

    def to_h(self, m):
        hit = self._cache.get(m)
        if hit is not None:
            return hit
        split = self.B.split_last(m)
        if split is None:
            res = dict(self.H.unit)
        else:
            rest, l = split
            res = self.T.star(self.to_h(rest), self.to_h_gen[l])
        self._cache[m] = res
        return res

    def element_to_h(self, e):
        out = {}
        for m, c in e.items():
            add_scaled(out, self.to_h(m), c)
        return out

    def letter_to_b(self, e):
        """H element supported on letters and 1 (span of a, b, c, d, 1) to B."""
        out = {}
        for m, c in e.items():
            if not any(m):
                add_term(out, self.B.one_mon, c)
                continue
            if self.H.length(m) != 1:
                raise AlgebraError("only letters can be mapped back")
            add_scaled(out, self.to_b_gen[self.H.last_letter(m)], c)
        return out


def build_checks(bundle):
    """Cheap structural checks run when a bundle is loaded; returns the first problem or None."""
    P = bundle.pres
    from .braid import _letters
    letters = [P.letter_mon(l) for l in _letters(P)]
    if bundle.hopf is not None:
        if bundle.hopf.check_coassociativity(letters):
            return "coproduct is not coassociative on generators"
        if bundle.hopf.check_counit(letters):
            return "counit law fails on generators"
        if bundle.hopf.check_antipode(letters):
            return "antipode law fails on generators"
    if bundle.rform is not None and bundle.name.startswith("slq2"):
        pairs = [(f, g) for f in letters for g in letters]
        if check_coquasitriangular(bundle.rform, pairs):
            return "r-form axioms fail on generator pairs"
    if bundle.engine is not None and bundle.oracle is not None:
        eng = letter_table(bundle.engine, P)
        for key, val in bundle.oracle.items():
            if eng[key] != val:
                return "engine braiding differs from the closed form at %s" % (key,)
    pairs = [(f, g) for f in letters for g in letters]
    if check_ribbon_relation(P, bundle.braiding, bundle.sigma, pairs):
        return "ribbon relation fails on generator pairs"
    return None


# plane cocycles

def tau(s, t):
    """τ_{s,t}(x^i y^j) = δ_{s,i} δ_{t,j}, as a function on plane elements."""
    def ev(e):
        return sum((c for m, c in e.items() if m == (s, t)), 0)
    return ev


def derivation(pres, which):
    """∂1 (which=0) or ∂2 (which=1): the Leibniz extension of x ↦ x, y ↦ 0 (resp. x ↦ 0, y ↦ y)."""
    def apply(e):
        out = {}
        for m, c in e.items():
            if m[which]:
                add_term(out, m, c * m[which])
        return out
    return apply


def phi_cocycle(pres, s, t):
    """φ_{s,t}(a ⊗ b ⊗ c) = τ_{s,t}(a [∂1(b) ∂2(c) - ∂2(b) ∂1(c)]) on 3-chains."""
    d1, d2 = derivation(pres, 0), derivation(pres, 1)
    ts = tau(s, t)
    one = pres.field.one

    def ev(chain):
        total = 0
        for key, c in chain.items():
            if len(key) != 3:
                raise ArityMismatch("φ pairs with chains of three legs")
            a, b_, c_ = ({m: one} for m in key)
            inner = pres.multiply(d1(b_), d2(c_))
            add_scaled(inner, pres.multiply(d2(b_), d1(c_)), -one)
            total = total + c * ts(pres.multiply(a, inner))
        return total
    return ev


def tau_on_chain(pres, s, t):
    ts = tau(s, t)

    def ev(chain):
        total = 0
        for key, c in chain.items():
            if len(key) != 1:
                raise ArityMismatch("τ pairs with chains of one leg")
            total = total + c * ts({key[0]: pres.field.one})
        return total
    return ev


def cocycle_pairing(bundle, which, s, t, chain):
    """Pair τ_{s,t} (one-leg chains) or φ_{s,t} (three-leg chains) with a plane chain."""
    if not bundle.name.startswith("quantum_plane"):
        raise AlgebraError("cocycle pairings are catalogued for the quantum plane only")
    if which == "tau":
        return tau_on_chain(bundle.pres, s, t)(chain)
    if which == "phi":
        return phi_cocycle(bundle.pres, s, t)(chain)
    raise AlgebraError("unknown cocycle %r" % which)


# verification suites

def _pairs(P, window):
    from .ncalgebra import Window
    mons = P.enumerate_basis(Window(window))
    return [(f, g) for f in mons for g in mons if P.filtration(f) + P.filtration(g) <= window]


def _generator_letters(P):
    from .braid import _letters
    return [P.letter_mon(l) for l in _letters(P)]


def oracle_failures(bundle, max_exp=5):
    """Engine/hexagon braiding against every catalogued closed form; returns mismatches."""
    P = bundle.pres
    bad = []
    if bundle.oracle is not None:
        if bundle.engine is not None:
            eng = letter_table(bundle.engine, P)
            bad += [("engine", k) for k, v in bundle.oracle.items() if eng[k] != v]
        for (a, b), v in bundle.oracle.items():
            if bundle.braiding.psi(P.letter_mon(a), P.letter_mon(b)) != v:
                bad.append(("table", (a, b)))
    fn = bundle.extras.get("oracle_monomial")
    if fn is None:
        return bad
    from .ncalgebra import Window
    mons = [m for m in P.enumerate_basis(Window(max_exp * P.ngens)) if all(abs(e) <= max_exp for e in m)]
    gens = _generator_letters(P)
    for m in mons:
        for g in gens:
            for left, right in ((m, g), (g, m)):
                expect = fn(left, right)
                if expect is None:
                    continue
                if bundle.braiding.psi(left, right) != expect:
                    bad.append(("hexagon", left, right))
                if bundle.engine is not None and bundle.engine.psi(left, right) != expect:
                    bad.append(("engine", left, right))
    return bad


def sigma_inverse_failures(bundle, window=4):
    P = bundle.pres
    from .ncalgebra import Window
    bad = []
    for m in P.enumerate_basis(Window(window)):
        if bundle.sigma(bundle.sigma.apply_mon(m, inverse=True)) != {m: P.field.one}:
            bad.append(m)
    return bad


def baez_commutativity_failures(bundle, pairs):
    """μ∘Ψ = μ on monomial pairs (weak Ψ-commutativity)."""
    P = bundle.pres
    bad = []
    for f, g in pairs:
        out = {}
        for (x, y), c in bundle.braiding.psi(f, g).items():
            add_scaled(out, P.mul(x, y), c)
        if out != P.mul(f, g):
            bad.append((f, g))
    return bad


def transmutation_failures(field=None):
    """B from the catalogue against B regenerated by transmuting C_q[SL(2)].

    Compares products, S̄ and Ψ_B on all generator pairs.
    """
    b = load_example("braided_B", field=field)
    T = b.extras["transmutation"]
    G = GeneratorChange(b, T)
    B = b.pres
    gens = [B.gen(n) for n in "xyuz"]
    bad = []
    for f in gens:
        for g in gens:
            if G.element_to_h(B.mul(f, g)) != T.star(G.to_h(f), G.to_h(g)):
                bad.append(("product", B.mon_str(f), B.mon_str(g)))
            ps = {}
            for mf, cf in G.to_h(f).items():
                for mg, cg in G.to_h(g).items():
                    for (w, v), c in T.psi_mon(mf, mg).items():
                        for m1, c1 in G.letter_to_b({w: B.field.one}).items():
                            for m2, c2 in G.letter_to_b({v: B.field.one}).items():
                                add_term(ps, (m1, m2), cf * cg * c * c1 * c2)
            if ps != b.braiding.psi(f, g):
                bad.append(("braiding", B.mon_str(f), B.mon_str(g)))
        if G.letter_to_b(T.antipode(G.to_h(f))) != b.hopf.antipode_mon(f):
            bad.append(("antipode", B.mon_str(f)))
    return bad


def central_failures(bundle, element, window):
    """Monomials of filtration ≤ window that do not commute with the element."""
    from .ncalgebra import Window
    P = bundle.pres
    bad = []
    for m in P.enumerate_basis(Window(window)):
        e = {m: P.field.one}
        if P.multiply(e, element) != P.multiply(element, e):
            bad.append(m)
    return bad


def twist_suite(field=None, window=3, samples=30, seed=0, exponent="printed"):
    """The cochain-twist checks on C_q[SL(2)]; returns {check: failures}.

    r = ∂φ on generator pairs, ∂(φ²) = θ on generator pairs and samples of
    filtration ≤ window, multiplicativity of the twist isomorphism (both
    directions) on generator pairs, and the θ-twisted plane x^m • y^n = q^{-mn} x^m y^n.
    """
    import random
    from .braid import twist_comodule_product, twist_product
    from .hopf import (BilinearForm, coboundary_inverse, cochain_boundary, convolution_inverse,
                       convolve)
    from .ncalgebra import Window
    b = load_example("slq2_canonical", field=field)
    H, P, r = b.hopf, b.pres, b.rform
    F = P.field
    one = F.one
    beta, gamma = F.p(-1), -F.p(-5)
    phi = varphi_functional(H, beta, gamma, exponent)
    phib = convolution_inverse(phi, 2 * window + 2, H)
    dphi = cochain_boundary(phi, H, phib)
    letters = _generator_letters(P)
    gen_pairs = [(f, g) for f in letters for g in letters]
    mons = P.enumerate_basis(Window(window))
    rng = random.Random(seed)
    samp = [(rng.choice(mons), rng.choice(mons)) for _ in range(samples)]
    out = {}
    out["r=dphi"] = [(f, g) for f, g in gen_pairs if dphi.value(f, g) != r.value(f, g)]
    phi2 = convolve(phi, phi, H)
    phi2b = convolve(phib, phib, H)
    d2 = cochain_boundary(phi2, H, phi2b)
    out["d(phi^2)=theta"] = [(f, g) for f, g in gen_pairs + samp if d2.value(f, g) != r.theta(f, g)]
    dphib = coboundary_inverse(phi, phib, H)

    def iso(e):
        res = {}
        for m, c in e.items():
            for (h1, h2, h3), x in H.iterated_coproduct_mon(m, 3).items():
                v = phib.value(h1) * phi.value(h3)
                if v:
                    add_term(res, h2, c * x * v)
        return res

    bad = []
    for f, g in gen_pairs:
        tw = twist_product({f: one}, {g: one}, H, dphi, dphib)
        if iso(tw) != P.multiply(iso({f: one}), iso({g: one})):
            bad.append(("to H", f, g))
        if iso(P.mul(f, g)) != twist_product(iso({f: one}), iso({g: one}), H, dphi, dphib):
            bad.append(("to H^phi", f, g))
    out["banal"] = bad
    plane = load_example("quantum_plane", field=field)
    thb = BilinearForm(F, r.theta_bar)
    bad = []
    for m in range(7):
        for n in range(7 - m):
            got = twist_comodule_product({(m, 0): one}, {(0, n): one}, plane.coaction, thb)
            if got != {(m, n): F.p(-4 * m * n)}:
                bad.append((m, n))
    out["theta-twist"] = bad
    out["phibar^2=s"] = [m for m in mons
                         if phi2b.value(m) != b.extras["ribbon_functional"].value(m)]
    return out


CHECKS = ["confluence", "hopf", "rform", "yangbaxter", "oracle", "ribbon", "naturality",
          "sigma-inverse", "baez", "resolution"]


def available_checks(bundle):
    out = ["confluence", "ribbon", "naturality", "sigma-inverse"]
    if bundle.hopf is not None:
        out.append("hopf")
    if bundle.rform is not None and bundle.name.startswith("slq2"):
        out += ["rform", "yangbaxter"]
    if bundle.oracle is not None or "oracle_monomial" in bundle.extras:
        out.append("oracle")
    if bundle.name == "slq2_baez":
        out.append("baez")
    if bundle.resolution is not None:
        out.append("resolution")
    return [c for c in CHECKS if c in out]


def run_checks(bundle, names=None, window=4):
    """Run the named verification checks; returns {name: list of failures}."""
    import itertools
    from .braid import check_sigma_naturality
    from .hopf import check_yang_baxter
    P = bundle.pres
    names = available_checks(bundle) if names is None else names
    letters = _generator_letters(P)
    out = {}
    for name in names:
        if name not in available_checks(bundle):
            raise AlgebraError("check %r is not available for %s" % (name, bundle.name))
        if name == "confluence":
            out[name] = P.check_confluence()
        elif name == "hopf":
            from .ncalgebra import Window
            mons = P.enumerate_basis(Window(min(window, 2)))
            h = bundle.hopf
            out[name] = (h.check_coassociativity(mons) + h.check_counit(mons)
                         + h.check_antipode(mons))
        elif name == "rform":
            pairs = [(f, g) for f in letters for g in letters]
            out[name] = check_coquasitriangular(bundle.rform, pairs)
        elif name == "yangbaxter":
            out[name] = check_yang_baxter(bundle.rform, list(itertools.product(letters, repeat=3)))
        elif name == "oracle":
            out[name] = oracle_failures(bundle)
        elif name == "ribbon":
            out[name] = check_ribbon_relation(P, bundle.braiding, bundle.sigma, _pairs(P, window))
        elif name == "naturality":
            out[name] = check_sigma_naturality(P, bundle.braiding, bundle.sigma, _pairs(P, window))
        elif name == "sigma-inverse":
            out[name] = sigma_inverse_failures(bundle, window)
        elif name == "baez":
            out[name] = baez_commutativity_failures(bundle, _pairs(P, min(window, 3)))
        elif name == "resolution":
            out[name] = bundle.resolution.composite_failures()
    return out
