"""Hopf structure maps, coactions, r-forms, functionals and coboundaries.

Tensor elements are dicts {(m1, m2): c}; longer tensors use tuples of
monomials as keys.  Structure maps are given on letters and extended to
monomials by splitting off the last letter, with memoisation.
"""

import itertools

from . import linalg
from .ncalgebra import AlgebraError, Window, add_scaled, add_term


class MapUndefined(AlgebraError):
    pass


class OutsideWindow(AlgebraError):
    pass


# tensors

def tensor_mul(pa, pb, s, t):
    """(a⊗b)(c⊗d) = ac⊗bd in the ordinary tensor product algebra."""
    out = {}
    for (a, b), c1 in s.items():
        for (c, d), c2 in t.items():
            left = pa.mul(a, c)
            right = pb.mul(b, d)
            k = c1 * c2
            for m, x in left.items():
                for n, y in right.items():
                    add_term(out, (m, n), k * x * y)
    return out


def tensor_str(t, pres_list, fmt):
    if not t:
        return "0"
    parts = []
    for key in sorted(t):
        legs = " ⊗ ".join(p.mon_str(m) for p, m in zip(pres_list, key))
        c = fmt(t[key])
        parts.append(legs if c == "1" else "(%s)*%s" % (c, legs))
    return " + ".join(parts)


def parse_tensor(text, pres_list):
    """Parse 'c*m1 ⊗ m2 + ...'; legs split at '⊗' (or '@'), coefficients on the first leg."""
    from .ncalgebra import _split_terms
    field = pres_list[0].field
    out = {}
    text = text.replace("@", "⊗").strip()
    if text == "0":
        return out
    for term in _split_terms(text):
        legs = [s.strip() for s in term.split("⊗")]
        if len(legs) != len(pres_list):
            raise AlgebraError("tensor term %r has the wrong number of legs" % term)
        parsed = [p.parse_element(s) for p, s in zip(pres_list, legs)]
        for combo in itertools.product(*[list(e.items()) for e in parsed]):
            c = field.one
            for _, x in combo:
                c = c * x
            add_term(out, tuple(m for m, _ in combo), c)
    return out


class HopfData:
    """Coproduct, counit, antipode and inverse antipode on letters.

    For a braided Hopf algebra pass the braiding (an object with psi and
    psi_inv on monomial pairs); Δ is then multiplicative into the braided
    tensor product and S, S^-1 are braided antihomomorphisms.
    """

    def __init__(self, pres, coproduct, counit, antipode=None, antipode_inv=None,
                 braiding=None):
        self.pres = pres
        self.field = pres.field
        self._coproduct = coproduct
        self._counit = counit
        self._antipode = antipode
        self._antipode_inv = antipode_inv
        self.braiding = braiding
        self.braided = braiding is not None
        self._dcache = {}
        self._ecache = {}
        self._scache = {}
        self._sicache = {}

    # coproduct

    def coproduct_mon(self, m):
        hit = self._dcache.get(m)
        if hit is not None:
            return hit
        P = self.pres
        one = self.field.one
        split = P.split_last(m)
        if split is None:
            res = {(m, m): one}
        else:
            rest, letter = split
            if letter not in self._coproduct:
                raise MapUndefined("no coproduct for %s" % P.letter_name(letter))
            if not any(rest):
                res = self._coproduct[letter]
            elif self.braided:
                res = self._braided_tmul(self.coproduct_mon(rest), self._coproduct[letter])
            else:
                res = tensor_mul(P, P, self.coproduct_mon(rest), self._coproduct[letter])
        self._dcache[m] = res
        return res

    def _braided_tmul(self, s, t):
        """(a⊗b)(c⊗d) = a·Ψ(b⊗c)·d in A ⊗̂ A."""
        P = self.pres
        out = {}
        for (a, b), c1 in s.items():
            for (c, d), c2 in t.items():
                for (c_, b_), c3 in self.braiding.psi(b, c).items():
                    k = c1 * c2 * c3
                    left = P.mul(a, c_)
                    right = P.mul(b_, d)
                    for m, x in left.items():
                        for n, y in right.items():
                            add_term(out, (m, n), k * x * y)
        return out

    def coproduct(self, a):
        out = {}
        for m, c in a.items():
            add_scaled(out, self.coproduct_mon(m), c)
        return out

    def iterated_coproduct_mon(self, m, legs):
        """Δ applied legs-1 times (to the first leg), as {tuple of monomials: c}."""
        if legs == 1:
            return {(m,): self.field.one}
        cur = {(m,): self.field.one}
        for _ in range(legs - 1):
            nxt = {}
            for key, c in cur.items():
                for (x, y), v in self.coproduct_mon(key[0]).items():
                    add_term(nxt, (x, y) + key[1:], c * v)
            cur = nxt
        return cur

    # counit

    def counit_mon(self, m):
        hit = self._ecache.get(m)
        if hit is not None:
            return hit
        P = self.pres
        split = P.split_last(m)
        if split is None:
            res = self.field.one
        else:
            rest, letter = split
            if letter not in self._counit:
                raise MapUndefined("no counit for %s" % P.letter_name(letter))
            res = self.counit_mon(rest) * self._counit[letter]
        self._ecache[m] = res
        return res

    def counit(self, a):
        out = self.field.zero
        for m, c in a.items():
            out = out + c * self.counit_mon(m)
        return out

    # antipodes

    def _anti(self, m, table, cache, inverse):
        hit = cache.get(m)
        if hit is not None:
            return hit
        P = self.pres
        if table is None:
            raise MapUndefined("antipode%s undefined for %s" % ("_inv" if inverse else "", P.name))
        split = P.split_last(m)
        if split is None:
            res = dict(P.unit)
        else:
            rest, letter = split
            if letter not in table:
                raise MapUndefined("no antipode for %s" % P.letter_name(letter))
            if not any(rest):
                res = table[letter]
            elif not self.braided:
                res = P.multiply(table[letter], self._anti(rest, table, cache, inverse))
            else:
                # S(m''ℓ) = μΨ(S m'' ⊗ S ℓ);  S^-1(m''ℓ) = μ(S^-1⊗S^-1)Ψ^-1(m''⊗ℓ)
                res = {}
                if not inverse:
                    for x, cx in self._anti(rest, table, cache, inverse).items():
                        for y, cy in table[letter].items():
                            for (y_, x_), cz in self.braiding.psi(x, y).items():
                                add_scaled(res, P.mul(y_, x_), cx * cy * cz)
                else:
                    lmon = P.letter_mon(letter)
                    for (l_, r_), cz in self.braiding.psi_inv(rest, lmon).items():
                        add_scaled(res, P.multiply(self._anti(l_, table, cache, inverse),
                                                   self._anti(r_, table, cache, inverse)), cz)
        cache[m] = res
        return res

    def antipode_mon(self, m):
        return self._anti(m, self._antipode, self._scache, False)

    def antipode_inv_mon(self, m):
        return self._anti(m, self._antipode_inv, self._sicache, True)

    def antipode(self, a):
        out = {}
        for m, c in a.items():
            add_scaled(out, self.antipode_mon(m), c)
        return out

    def antipode_inv(self, a):
        out = {}
        for m, c in a.items():
            add_scaled(out, self.antipode_inv_mon(m), c)
        return out

    def structure_map(self, which, a):
        if which == "counit":
            return self.counit(a)
        if which == "antipode":
            return self.antipode(a)
        if which == "antipode_inv":
            return self.antipode_inv(a)
        raise MapUndefined("unknown structure map %r" % which)

    # axiom checks on a list of monomials; each returns the failing inputs

    def check_coassociativity(self, monos):
        P = self.pres
        bad = []
        for m in monos:
            left, right = {}, {}
            for (x, y), c in self.coproduct_mon(m).items():
                for (x1, x2), v in self.coproduct_mon(x).items():
                    add_term(left, (x1, x2, y), c * v)
                for (y1, y2), v in self.coproduct_mon(y).items():
                    add_term(right, (x, y1, y2), c * v)
            if left != right:
                bad.append(m)
        return bad

    def check_counit(self, monos):
        bad = []
        for m in monos:
            left, right = {}, {}
            for (x, y), c in self.coproduct_mon(m).items():
                add_term(left, y, c * self.counit_mon(x))
                add_term(right, x, c * self.counit_mon(y))
            if left != {m: self.field.one} or right != {m: self.field.one}:
                bad.append(m)
        return bad

    def check_antipode(self, monos):
        P = self.pres
        bad = []
        for m in monos:
            left, right = {}, {}
            for (x, y), c in self.coproduct_mon(m).items():
                add_scaled(left, P.multiply(self.antipode_mon(x), {y: self.field.one}), c)
                add_scaled(right, P.multiply({x: self.field.one}, self.antipode_mon(y)), c)
            e = self.counit_mon(m)
            target = {P.one_mon: e} if e else {}
            if left != target or right != target:
                bad.append(m)
            if self._antipode_inv is not None:
                if self.antipode(self.antipode_inv_mon(m)) != {m: self.field.one}:
                    bad.append(m)
        return bad


class Coaction:
    """Right coaction A -> A ⊗ H.

    kind "algebra": the table on letters is extended multiplicatively leg by
    leg (A a comodule algebra).  kind "adjoint": A is H itself with
    Ad_R(a) = a(2) ⊗ S(a(1)) a(3).
    """

    def __init__(self, pres_a, hopf, table=None, kind="algebra"):
        self.A = pres_a
        self.hopf = hopf
        self.H = hopf.pres
        self.table = table
        self.kind = kind
        self._cache = {}

    def coact_mon(self, m):
        hit = self._cache.get(m)
        if hit is not None:
            return hit
        one = self.A.field.one
        if self.kind == "adjoint":
            H = self.H
            res = {}
            for (a1, a2, a3), c in self.hopf.iterated_coproduct_mon(m, 3).items():
                right = H.multiply(self.hopf.antipode_mon(a1), {a3: one})
                for n, v in right.items():
                    add_term(res, (a2, n), c * v)
        else:
            split = self.A.split_last(m)
            if split is None:
                res = {(m, self.H.one_mon): one}
            else:
                rest, letter = split
                if self.table is None or letter not in self.table:
                    raise MapUndefined("no coaction for %s" % self.A.letter_name(letter))
                if not any(rest):
                    res = self.table[letter]
                else:
                    res = tensor_mul(self.A, self.H, self.coact_mon(rest), self.table[letter])
        self._cache[m] = res
        return res

    def coact(self, a):
        out = {}
        for m, c in a.items():
            add_scaled(out, self.coact_mon(m), c)
        return out

    def check_counit(self, monos):
        bad = []
        for m in monos:
            out = {}
            for (x, h), c in self.coact_mon(m).items():
                add_term(out, x, c * self.hopf.counit_mon(h))
            if out != {m: self.A.field.one}:
                bad.append(m)
        return bad

    def check_coassociativity(self, monos):
        bad = []
        for m in monos:
            left, right = {}, {}
            for (x, h), c in self.coact_mon(m).items():
                for (x0, x1), v in self.coact_mon(x).items():
                    add_term(left, (x0, x1, h), c * v)
                for (h1, h2), v in self.hopf.coproduct_mon(h).items():
                    add_term(right, (x, h1, h2), c * v)
            if left != right:
                bad.append(m)
        return bad


class RForm:
    """Bilinear form on a Hopf algebra from its values on letter pairs.

    Extension laws: r(fg, h) = r(f, h(1)) r(g, h(2)) and
    r(f, gh) = r(f(1), h) r(f(2), g); r(1, f) = r(f, 1) = ε(f).
    """

    def __init__(self, hopf, table):
        self.hopf = hopf
        self.pres = hopf.pres
        self.field = hopf.field
        self.table = table
        self._cache = {}
        self._bar_cache = {}

    def value(self, m, n):
        key = (m, n)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        P = self.pres
        hopf = self.hopf
        if not any(m):
            res = hopf.counit_mon(n)
        elif not any(n):
            res = hopf.counit_mon(m)
        elif P.length(m) > 1:
            rest, letter = P.split_last(m)
            lm = P.letter_mon(letter)
            res = self.field.zero
            for (n1, n2), c in hopf.coproduct_mon(n).items():
                x = self.value(rest, n1)
                if x:
                    res = res + c * x * self.value(lm, n2)
        elif P.length(n) > 1:
            rest, letter = P.split_last(n)
            ln = P.letter_mon(letter)
            res = self.field.zero
            for (m1, m2), c in hopf.coproduct_mon(m).items():
                x = self.value(m1, ln)
                if x:
                    res = res + c * x * self.value(m2, rest)
        else:
            res = self.table.get((P.last_letter(m), P.last_letter(n)), self.field.zero)
        self._cache[key] = res
        return res

    def value_other_order(self, m, n):
        """Same form, splitting the second argument first (well-definedness check)."""
        P = self.pres
        hopf = self.hopf
        if not any(m) or not any(n) or (P.length(m) == 1 and P.length(n) == 1):
            return self.value(m, n)
        if P.length(n) > 1:
            rest, letter = P.split_last(n)
            ln = P.letter_mon(letter)
            res = self.field.zero
            for (m1, m2), c in hopf.coproduct_mon(m).items():
                res = res + c * self.value_other_order(m1, ln) * self.value_other_order(m2, rest)
            return res
        rest, letter = P.split_last(m)
        lm = P.letter_mon(letter)
        res = self.field.zero
        for (n1, n2), c in hopf.coproduct_mon(n).items():
            res = res + c * self.value_other_order(rest, n1) * self.value_other_order(lm, n2)
        return res

    def __call__(self, f, g):
        if isinstance(f, tuple):
            return self.value(f, g)
        out = self.field.zero
        for m, c in f.items():
            for n, v in g.items():
                out = out + c * v * self.value(m, n)
        return out

    def bar(self, m, n):
        """Convolution inverse r̄(f, g) = r(S f, g)."""
        key = (m, n)
        hit = self._bar_cache.get(key)
        if hit is not None:
            return hit
        res = self.field.zero
        for x, c in self.hopf.antipode_mon(m).items():
            res = res + c * self.value(x, n)
        self._bar_cache[key] = res
        return res

    def theta(self, m, n):
        """θ = r21·r: θ(f, g) = r(g(1), f(1)) r(f(2), g(2))."""
        res = self.field.zero
        for (f1, f2), c in self.hopf.coproduct_mon(m).items():
            for (g1, g2), v in self.hopf.coproduct_mon(n).items():
                x = self.value(g1, f1)
                if x:
                    res = res + c * v * x * self.value(f2, g2)
        return res

    def theta_bar(self, m, n):
        """Inverse of θ: θ̄(f, g) = r̄(f(1), g(1)) r̄(g(2), f(2))."""
        res = self.field.zero
        for (f1, f2), c in self.hopf.coproduct_mon(m).items():
            for (g1, g2), v in self.hopf.coproduct_mon(n).items():
                x = self.bar(f1, g1)
                if x:
                    res = res + c * v * x * self.bar(g2, f2)
        return res


def check_coquasitriangular(rform, pairs):
    """The three r-form identities on monomial pairs; returns failures.

    gf = r(f1,g1) f2 g2 r̄(f3,g3), r(fg,h) = r(f,h1) r(g,h2),
    r(f,gh) = r(f1,h) r(f2,g).
    """
    hopf = rform.hopf
    P = hopf.pres
    bad = []
    for f, g in pairs:
        lhs = P.mul(g, f)
        rhs = {}
        for (f1, f2, f3), c in hopf.iterated_coproduct_mon(f, 3).items():
            for (g1, g2, g3), v in hopf.iterated_coproduct_mon(g, 3).items():
                k = rform.value(f1, g1)
                if not k:
                    continue
                k2 = rform.bar(f3, g3)
                if not k2:
                    continue
                add_scaled(rhs, P.mul(f2, g2), c * v * k * k2)
        if lhs != rhs:
            bad.append(("commutation", f, g))
    for f, g in pairs:
        for h in (f, g):
            # multiplicativity in the first argument: r(fg, h)
            left = rform(P.mul(f, g), {h: P.field.one})
            right = P.field.zero
            for (h1, h2), c in hopf.coproduct_mon(h).items():
                right = right + c * rform.value(f, h1) * rform.value(g, h2)
            if left != right:
                bad.append(("first", f, g, h))
            left = rform({h: P.field.one}, P.mul(f, g))
            right = P.field.zero
            for (h1, h2), c in hopf.coproduct_mon(h).items():
                right = right + c * rform.value(h1, g) * rform.value(h2, f)
            if left != right:
                bad.append(("second", h, f, g))
    return bad


def check_yang_baxter(rform, triples):
    """r12 r13 r23 = r23 r13 r12 as trilinear forms; returns failures."""
    hopf = rform.hopf
    bad = []
    for f, g, h in triples:
        F = hopf.iterated_coproduct_mon(f, 2)
        G = hopf.iterated_coproduct_mon(g, 2)
        Hh = hopf.iterated_coproduct_mon(h, 2)
        left = right = rform.field.zero
        for (f1, f2), a in F.items():
            for (g1, g2), b in G.items():
                for (h1, h2), c in Hh.items():
                    k = a * b * c
                    left = left + k * rform.value(f1, g1) * rform.value(f2, h1) * rform.value(g2, h2)
                    right = right + k * rform.value(g1, h1) * rform.value(f1, h2) * rform.value(f2, g2)
        if left != right:
            bad.append((f, g, h))
    return bad


# functionals

class Functional:
    """A linear functional, given by a rule on monomials or by a finite table."""

    def __init__(self, hopf, rule=None, table=None, window=None, name="functional"):
        self.hopf = hopf
        self.field = hopf.field
        self.rule = rule
        self.table = table
        self.window = window
        self.name = name

    def value(self, m):
        if self.rule is not None:
            return self.rule(m)
        v = self.table.get(m)
        if v is None:
            if self.window is not None and self.hopf.pres.filtration(m) <= self.window.max_filtration:
                return self.field.zero
            raise OutsideWindow("%s not tabulated at %s" % (self.name, self.hopf.pres.mon_str(m)))
        return v

    def __call__(self, a):
        if isinstance(a, tuple):
            return self.value(a)
        out = self.field.zero
        for m, c in a.items():
            out = out + c * self.value(m)
        return out


def counit_functional(hopf):
    return Functional(hopf, rule=hopf.counit_mon, name="counit")


def convolve(phi, psi, hopf):
    """(φ*ψ)(h) = φ(h(1)) ψ(h(2))."""
    cache = {}

    def rule(m):
        hit = cache.get(m)
        if hit is None:
            hit = hopf.field.zero
            for (x, y), c in hopf.coproduct_mon(m).items():
                a = phi.value(x)
                if a:
                    hit = hit + c * a * psi.value(y)
            cache[m] = hit
        return hit

    return Functional(hopf, rule=rule, name="(%s*%s)" % (phi.name, psi.name))


def convolution_inverse(phi, window, hopf, basis=None):
    """φ̄ on the window F_D with φ̄(h(1)) φ(h(2)) = ε(h), by a linear solve.

    F_D must be a subcoalgebra; both one-sided identities are then checked
    on every basis element.
    """
    if isinstance(window, int):
        window = Window(window)
    P = hopf.pres
    if basis is None:
        basis = P.enumerate_basis(window)
    index = {m: i for i, m in enumerate(basis)}
    field = hopf.field
    # column for unknown φ̄(x): Σ_h coefficient of φ̄(x) in equation h
    columns = [dict() for _ in basis]
    rhs = {}
    for row, h in enumerate(basis):
        for (x, y), c in hopf.coproduct_mon(h).items():
            if x not in index:
                raise OutsideWindow("window is not a subcoalgebra at %s" % P.mon_str(h))
            v = c * phi.value(y)
            if v:
                add_term(columns[index[x]], row, v)
        e = hopf.counit_mon(h)
        if e:
            rhs[row] = e
    try:
        sol = linalg.solve(columns, rhs)
    except linalg.NotInvertible as exc:
        raise linalg.NotInvertible("%s is not convolution invertible on the window" % phi.name) from exc
    table = {basis[j]: v for j, v in sol.items() if v}
    inv = Functional(hopf, table=table, window=window, name=phi.name + "_bar")
    for h in basis:
        right = field.zero
        for (x, y), c in hopf.coproduct_mon(h).items():
            right = right + c * phi.value(x) * inv.value(y)
        if right != hopf.counit_mon(h):
            raise linalg.NotInvertible("one-sided inverse only at %s" % P.mon_str(h))
    return inv


class BilinearForm:
    def __init__(self, field, rule, name="form"):
        self.field = field
        self.rule = rule
        self.name = name

    def value(self, m, n):
        return self.rule(m, n)

    def __call__(self, f, g):
        if isinstance(f, tuple):
            return self.rule(f, g)
        out = self.field.zero
        for m, c in f.items():
            for n, v in g.items():
                out = out + c * v * self.rule(m, n)
        return out


def cochain_boundary(phi, hopf, phi_bar=None, window=None):
    """∂φ(x, y) = φ(x(1)) φ(y(1)) φ̄(x(2) y(2)) for a functional φ."""
    if phi_bar is None:
        phi_bar = convolution_inverse(phi, window, hopf)
    P = hopf.pres
    cache = {}

    def rule(x, y):
        key = (x, y)
        hit = cache.get(key)
        if hit is not None:
            return hit
        out = hopf.field.zero
        for (x1, x2), a in hopf.coproduct_mon(x).items():
            va = phi.value(x1)
            if not va:
                continue
            for (y1, y2), b in hopf.coproduct_mon(y).items():
                vb = phi.value(y1)
                if not vb:
                    continue
                out = out + a * b * va * vb * phi_bar(P.mul(x2, y2))
        cache[key] = out
        return out

    return BilinearForm(hopf.field, rule, name="d" + phi.name)


def coboundary_inverse(phi, phi_bar, hopf):
    """Inverse of ∂φ: (x, y) ↦ φ(x(1) y(1)) φ̄(x(2)) φ̄(y(2))."""
    P = hopf.pres

    def rule(x, y):
        out = hopf.field.zero
        for (x1, x2), a in hopf.coproduct_mon(x).items():
            va = phi_bar.value(x2)
            if not va:
                continue
            for (y1, y2), b in hopf.coproduct_mon(y).items():
                vb = phi_bar.value(y2)
                if not vb:
                    continue
                out = out + a * b * va * vb * phi(P.mul(x1, y1))
        return out

    return BilinearForm(hopf.field, rule, name="d" + phi.name + "_bar")


def cochain_boundary3(form, form_bar, hopf):
    """∂φ(a,b,c) = φ(a1,b1) φ(a2b2,c1) φ̄(a3,b3c2) φ̄(b4,c3) for a bilinear form φ."""
    P = hopf.pres

    def rule(a, b, c):
        out = hopf.field.zero
        A = hopf.iterated_coproduct_mon(a, 3)
        B = hopf.iterated_coproduct_mon(b, 4)
        C = hopf.iterated_coproduct_mon(c, 3)
        for (a1, a2, a3), x in A.items():
            for (b1, b2, b3, b4), y in B.items():
                v1 = form.value(a1, b1)
                if not v1:
                    continue
                ab = P.mul(a2, b2)
                for (c1, c2, c3), z in C.items():
                    v2 = form(ab, {c1: hopf.field.one})
                    if not v2:
                        continue
                    v3 = form_bar({a3: hopf.field.one}, P.mul(b3, c2))
                    if not v3:
                        continue
                    out = out + x * y * z * v1 * v2 * v3 * form_bar.value(b4, c3)
        return out

    return rule
