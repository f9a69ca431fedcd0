"""Braidings, ribbon automorphisms, braided tensor products, transmutation, twists.

A braiding object exposes psi(v, w) and psi_inv(v, w) on monomials; both
return {(first leg, second leg): c}.  psi_inv(v, w) is the preimage of v ⊗ w
under Ψ, so Ψ applied to its terms gives back v ⊗ w.
Chains are dicts keyed by tuples of monomials.
"""

from . import linalg
from .ncalgebra import AlgebraError, add_scaled, add_term


class IndexOutOfRange(AlgebraError):
    pass


class FlipBraiding:
    """The symmetric braiding v⊗w ↦ w⊗v."""

    def __init__(self, pres):
        self.pres = pres
        self.one = pres.field.one

    def psi(self, v, w):
        return {(w, v): self.one}

    psi_inv = psi


class _Hexagon:
    """Extension of a letter-pair table to all monomial pairs.

    Uses Ψ(v ⊗ w''ℓ) = (μ⊗id)Ψ_{1,2}Ψ_{0,1}(v ⊗ w'' ⊗ ℓ) and
    Ψ(v''ℓ ⊗ w) = (id⊗μ)Ψ_{0,1}Ψ_{1,2}(v'' ⊗ ℓ ⊗ w), valid because
    multiplication is a morphism in the braided category.
    """

    def __init__(self, pres, table):
        self.pres = pres
        self.table = table
        self.cache = {}
        self.one = pres.field.one

    def __call__(self, v, w):
        key = (v, w)
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        P = self.pres
        if not any(v) or not any(w):
            res = {(w, v): self.one}
        elif P.length(w) > 1:
            rest, letter = P.split_last(w)
            lm = P.letter_mon(letter)
            res = {}
            for (wa, va), c in self(v, rest).items():
                for (lb, vb), c2 in self(va, lm).items():
                    k = c * c2
                    for m, x in P.mul(wa, lb).items():
                        add_term(res, (m, vb), k * x)
        elif P.length(v) > 1:
            rest, letter = P.split_last(v)
            lm = P.letter_mon(letter)
            res = {}
            for (wb, lb), c in self(lm, w).items():
                for (wc, vc), c2 in self(rest, wb).items():
                    k = c * c2
                    for m, x in P.mul(vc, lb).items():
                        add_term(res, (wc, m), k * x)
        else:
            t = self.table.get((P.last_letter(v), P.last_letter(w)))
            if t is None:
                raise AlgebraError("braiding table lacks %s ⊗ %s" % (P.mon_str(v), P.mon_str(w)))
            res = t
        self.cache[key] = res
        return res


def _letters(pres):
    out = []
    for g in range(pres.ngens):
        out.append((g, 1))
        if pres.exponents[g] == "int":
            out.append((g, -1))
    return out


def invert_letter_table(pres, table):
    """Ψ^-1 on letter pairs, by inverting Ψ on the span of letter ⊗ letter."""
    letters = _letters(pres)
    pairs = [(pres.letter_mon(a), pres.letter_mon(b)) for a in letters for b in letters]
    index = {p: i for i, p in enumerate(pairs)}
    columns = []
    for a in letters:
        for b in letters:
            col = {}
            for key, c in table[(a, b)].items():
                if key not in index:
                    raise AlgebraError("braiding does not preserve the letter span")
                add_term(col, index[key], c)
            columns.append(col)
    inv = {}
    for a in letters:
        for b in letters:
            x = linalg.solve(columns, {index[(pres.letter_mon(a), pres.letter_mon(b))]: pres.field.one})
            # Ψ(Σ x_k pair_k) = a⊗b, so Ψ^-1(a⊗b) = Σ x_k pair_k
            res = {}
            for k, c in x.items():
                add_term(res, pairs[k], c)
            inv[(a, b)] = res
    return inv


class TableBraiding:
    """Braiding of an algebra with itself, from its values on letter pairs."""

    def __init__(self, pres, table, inv_table=None, name="table"):
        self.pres = pres
        self.name = name
        self.table = table
        if inv_table is None:
            inv_table = invert_letter_table(pres, table)
        self.inv_table = inv_table
        self.psi = _Hexagon(pres, table)
        self.psi_inv = _Hexagon(pres, inv_table)


class EngineBraiding:
    """Ψ(v⊗w) = w0 ⊗ v0 r(v1, w1) from right coactions and an r-form."""

    def __init__(self, coact_v, coact_w, rform, name="engine"):
        self.cv = coact_v
        self.cw = coact_w
        self.rform = rform
        self.name = name
        self._cache = {}
        self._icache = {}

    def psi(self, v, w):
        key = (v, w)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        res = {}
        r = self.rform
        for (v0, v1), a in self.cv.coact_mon(v).items():
            for (w0, w1), b in self.cw.coact_mon(w).items():
                x = r.value(v1, w1)
                if x:
                    add_term(res, (w0, v0), a * b * x)
        self._cache[key] = res
        return res

    def psi_inv(self, v, w):
        """Ψ^-1(v⊗w) = w0 ⊗ v0 r̄(w1, v1)."""
        key = (v, w)
        hit = self._icache.get(key)
        if hit is not None:
            return hit
        res = {}
        r = self.rform
        for (v0, v1), a in self.cw.coact_mon(v).items():
            for (w0, w1), b in self.cv.coact_mon(w).items():
                x = r.bar(w1, v1)
                if x:
                    add_term(res, (w0, v0), a * b * x)
        self._icache[key] = res
        return res


class BaezBraiding:
    """Ψ(f⊗g) = r̄(f1, g1) g2 ⊗ f2 r(f3, g3) on a coquasitriangular H."""

    def __init__(self, rform, name="baez"):
        self.rform = rform
        self.hopf = rform.hopf
        self.pres = self.hopf.pres
        self.name = name
        self._cache = {}

    def psi(self, f, g):
        key = (f, g)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        r = self.rform
        res = {}
        F = self.hopf.iterated_coproduct_mon(f, 3)
        G = self.hopf.iterated_coproduct_mon(g, 3)
        for (f1, f2, f3), a in F.items():
            for (g1, g2, g3), b in G.items():
                x = r.bar(f1, g1)
                if not x:
                    continue
                y = r.value(f3, g3)
                if y:
                    add_term(res, (g2, f2), a * b * x * y)
        self._cache[key] = res
        return res

    def psi_inv(self, f, g):
        """Ψ^-1(f⊗g) = r(g1, f1) g2 ⊗ f2 r̄(g3, f3)."""
        r = self.rform
        res = {}
        F = self.hopf.iterated_coproduct_mon(f, 3)
        G = self.hopf.iterated_coproduct_mon(g, 3)
        for (f1, f2, f3), a in F.items():
            for (g1, g2, g3), b in G.items():
                x = r.value(g1, f1)
                if not x:
                    continue
                y = r.bar(g3, f3)
                if y:
                    add_term(res, (g2, f2), a * b * x * y)
        return res


def letter_table(braiding, pres):
    """Evaluate a braiding on all letter pairs."""
    table = {}
    for a in _letters(pres):
        for b in _letters(pres):
            table[(a, b)] = braiding.psi(pres.letter_mon(a), pres.letter_mon(b))
    return table


# applying braidings

def braid_pair(v, w, braiding, inverse=False):
    """Ψ or Ψ^-1 on elements v ⊗ w; returns a tensor element."""
    op = braiding.psi_inv if inverse else braiding.psi
    out = {}
    for m, a in v.items():
        for n, b in w.items():
            add_scaled(out, op(m, n), a * b)
    return out


def psi_leg(chain, i, braiding, inverse=False):
    """Ψ_{i,i+1} on a chain."""
    op = braiding.psi_inv if inverse else braiding.psi
    out = {}
    for key, c in chain.items():
        if i < 0 or i + 1 >= len(key):
            raise IndexOutOfRange("leg %d out of range for length %d" % (i, len(key)))
        head, tail = key[:i], key[i + 2:]
        for (x, y), v in op(key[i], key[i + 1]).items():
            add_term(out, head + (x, y) + tail, c * v)
    return out


def psi_block(chain, m, n, braiding, inverse=False):
    """Ψ_{[m,n],n+1} = Ψ_{m,m+1} ... Ψ_{n,n+1}: moves leg n+1 to position m.

    With inverse=True this is the inverse operator Ψ^-1_{n,n+1} ... Ψ^-1_{m,m+1},
    which moves leg m back to position n+1.
    """
    if m > n:
        return chain
    order = range(m, n + 1) if inverse else range(n, m - 1, -1)
    for i in order:
        chain = psi_leg(chain, i, braiding, inverse)
    return chain


def braid_composite(chain, pattern, braiding):
    """pattern: ("leg", i), ("block", m, n), ("leg_inv", i) or ("block_inv", m, n)."""
    kind = pattern[0]
    if kind == "leg":
        return psi_leg(chain, pattern[1], braiding)
    if kind == "leg_inv":
        return psi_leg(chain, pattern[1], braiding, True)
    if kind == "block":
        return psi_block(chain, pattern[1], pattern[2], braiding)
    if kind == "block_inv":
        return psi_block(chain, pattern[1], pattern[2], braiding, True)
    raise AlgebraError("unknown braid pattern %r" % (pattern,))


# ribbon automorphisms

class Ribbon:
    """σ from its values on letters, extended by σ(m''ℓ) = μ(σ⊗σ)Ψ²(m''⊗ℓ).

    σ^-1 is extended by σ^-1(m''ℓ) = μ(σ^-1⊗σ^-1)Ψ^-2(m''⊗ℓ).
    """

    def __init__(self, pres, braiding, values, inv_values=None, name="sigma"):
        self.pres = pres
        self.braiding = braiding
        self.values = values
        self.name = name
        if inv_values is None:
            inv_values = _invert_letter_map(pres, values)
        self.inv_values = inv_values
        self._cache = {}
        self._icache = {}

    def _ext(self, m, inverse):
        cache = self._icache if inverse else self._cache
        hit = cache.get(m)
        if hit is not None:
            return hit
        P = self.pres
        split = P.split_last(m)
        if split is None:
            res = dict(P.unit)
        else:
            rest, letter = split
            table = self.inv_values if inverse else self.values
            if not any(rest):
                res = table[letter]
            else:
                op = self.braiding.psi_inv if inverse else self.braiding.psi
                lm = P.letter_mon(letter)
                res = {}
                for (l1, r1), c1 in op(rest, lm).items():
                    for (r2, l2), c2 in op(l1, r1).items():
                        left = self._ext(r2, inverse)
                        right = self._ext(l2, inverse)
                        add_scaled(res, P.multiply(left, right), c1 * c2)
        cache[m] = res
        return res

    def apply_mon(self, m, inverse=False):
        return self._ext(m, inverse)

    def __call__(self, a, inverse=False):
        out = {}
        for m, c in a.items():
            add_scaled(out, self._ext(m, inverse), c)
        return out


def _invert_letter_map(pres, values):
    letters = _letters(pres)
    mons = [pres.letter_mon(l) for l in letters]
    index = {m: i for i, m in enumerate(mons)}
    columns = []
    for l in letters:
        col = {}
        for m, c in values[l].items():
            if m not in index:
                raise AlgebraError("ribbon map does not preserve the letter span")
            add_term(col, index[m], c)
        columns.append(col)
    inv = {}
    for l in letters:
        x = linalg.solve(columns, {index[pres.letter_mon(l)]: pres.field.one})
        inv[l] = {mons[k]: c for k, c in x.items()}
    return inv


class FunctionalRibbon:
    """σ(v) = v0 s(v1) for a coaction and a ribbon functional s."""

    def __init__(self, coaction, s):
        self.coaction = coaction
        self.s = s
        self.pres = coaction.A

    def apply_mon(self, m, inverse=False):
        if inverse:
            raise AlgebraError("functional ribbon has no inverse route")
        out = {}
        for (x, h), c in self.coaction.coact_mon(m).items():
            v = self.s.value(h)
            if v:
                add_term(out, x, c * v)
        return out

    def __call__(self, a, inverse=False):
        out = {}
        for m, c in a.items():
            add_scaled(out, self.apply_mon(m, inverse), c)
        return out


def check_ribbon_relation(pres, braiding, sigma, pairs):
    """μ(σ⊗σ)Ψ²(f⊗g) = σ(fg) on monomial pairs; returns failures."""
    bad = []
    for f, g in pairs:
        left = {}
        for (g1, f1), c1 in braiding.psi(f, g).items():
            for (f2, g2), c2 in braiding.psi(g1, f1).items():
                add_scaled(left, pres.multiply(sigma.apply_mon(f2), sigma.apply_mon(g2)), c1 * c2)
        right = sigma(pres.mul(f, g))
        if left != right:
            bad.append((f, g))
    return bad


def check_sigma_naturality(pres, braiding, sigma, pairs):
    """(σ⊗id)Ψ = Ψ(id⊗σ) on monomial pairs."""
    bad = []
    for f, g in pairs:
        left = {}
        for (x, y), c in braiding.psi(f, g).items():
            for m, v in sigma.apply_mon(x).items():
                add_term(left, (m, y), c * v)
        right = {}
        for m, v in sigma.apply_mon(g).items():
            add_scaled(right, braiding.psi(f, m), v)
        if left != right:
            bad.append((f, g))
    return bad


def check_hexagon(pres, braiding, triples):
    """Ψ(μ⊗id) = (id⊗μ)Ψ_{0,1}Ψ_{1,2} and Ψ(id⊗μ) = (μ⊗id)Ψ_{1,2}Ψ_{0,1}."""
    bad = []
    one = pres.field.one
    for a, b, c in triples:
        left = {}
        for m, x in pres.mul(a, b).items():
            add_scaled(left, braiding.psi(m, c), x)
        chain = psi_block({(a, b, c): one}, 0, 1, braiding)
        right = {}
        for (w, v1, v2), x in chain.items():
            for m, y in pres.mul(v1, v2).items():
                add_term(right, (w, m), x * y)
        if left != right:
            bad.append(("left", a, b, c))
        left = {}
        for m, x in pres.mul(b, c).items():
            add_scaled(left, braiding.psi(a, m), x)
        chain = psi_leg(psi_leg({(a, b, c): one}, 0, braiding), 1, braiding)
        right = {}
        for (w1, w2, v), x in chain.items():
            for m, y in pres.mul(w1, w2).items():
                add_term(right, (m, v), x * y)
        if left != right:
            bad.append(("right", a, b, c))
    return bad


# braided tensor products

def braided_tensor_multiply(x, y, pres, braiding, inverse_flavor=False):
    """Product in A ⊗̂ A, or in A^e = A ⊗̂ A^op taken with Ψ^-1.

    A ⊗̂ A:  (a⊗b)(c⊗d) = a Ψ(b⊗c) d.
    A^e:    (a⊗b)(c⊗d) = (μ⊗μ)Ψ^-1_{2,3}Ψ^-1_{1,2}(a⊗b⊗c⊗d) = a c' ⊗ d' b''.
    """
    out = {}
    for (a, b), c1 in x.items():
        for (c, d), c2 in y.items():
            k = c1 * c2
            if not inverse_flavor:
                for (c_, b_), c3 in braiding.psi(b, c).items():
                    for m, u in pres.mul(a, c_).items():
                        for n, v in pres.mul(b_, d).items():
                            add_term(out, (m, n), k * c3 * u * v)
            else:
                for (c_, b_), c3 in braiding.psi_inv(b, c).items():
                    for (d_, b__), c4 in braiding.psi_inv(b_, d).items():
                        for m, u in pres.mul(a, c_).items():
                            for n, v in pres.mul(d_, b__).items():
                                add_term(out, (m, n), k * c3 * c4 * u * v)
    return out


# transmutation

class Transmutation:
    """Braided Hopf algebra B(H) on the vector space of a coquasitriangular H."""

    def __init__(self, rform):
        self.rform = rform
        self.hopf = rform.hopf
        self.H = self.hopf.pres
        self.field = self.H.field
        self._star = {}

    def star_mon(self, a, b):
        """a * b = a(2) b(2) r(S(a(1)) a(3), S(b(1)))."""
        key = (a, b)
        hit = self._star.get(key)
        if hit is not None:
            return hit
        H, hopf, r = self.H, self.hopf, self.rform
        one = self.field.one
        out = {}
        A3 = hopf.iterated_coproduct_mon(a, 3)
        B2 = hopf.coproduct_mon(b)
        for (a1, a2, a3), x in A3.items():
            left = H.multiply(hopf.antipode_mon(a1), {a3: one})
            for (b1, b2), y in B2.items():
                v = r(left, hopf.antipode_mon(b1))
                if v:
                    add_scaled(out, H.mul(a2, b2), x * y * v)
        self._star[key] = out
        return out

    def star_mon_first_form(self, a, b):
        """a * b = a(2) b(3) r(a(1), b(2)) r(a(3), S b(1))."""
        H, hopf, r = self.H, self.hopf, self.rform
        out = {}
        for (a1, a2, a3), x in hopf.iterated_coproduct_mon(a, 3).items():
            for (b1, b2, b3), y in hopf.iterated_coproduct_mon(b, 3).items():
                v = r.value(a1, b2)
                if not v:
                    continue
                w = r({a3: self.field.one}, hopf.antipode_mon(b1))
                if w:
                    add_scaled(out, H.mul(a2, b3), x * y * v * w)
        return out

    def star(self, f, g):
        out = {}
        for m, c in f.items():
            for n, v in g.items():
                add_scaled(out, self.star_mon(m, n), c * v)
        return out

    def antipode_mon(self, a):
        """S̄(a) = S(a(2)) r(S²(a(3)) S(a(1)), a(4))."""
        H, hopf, r = self.H, self.hopf, self.rform
        one = self.field.one
        out = {}
        for (a1, a2, a3, a4), x in hopf.iterated_coproduct_mon(a, 4).items():
            left = H.multiply(hopf.antipode(hopf.antipode_mon(a3)), hopf.antipode_mon(a1))
            v = r(left, {a4: one})
            if v:
                add_scaled(out, hopf.antipode_mon(a2), x * v)
        return out

    def antipode(self, f):
        out = {}
        for m, c in f.items():
            add_scaled(out, self.antipode_mon(m), c)
        return out

    def psi_mon(self, a, b):
        """Ψ_B(a⊗b) = b(2) ⊗ a(2) r(S(a(1)) a(3), S(b(1)) b(3))."""
        H, hopf, r = self.H, self.hopf, self.rform
        one = self.field.one
        out = {}
        A3 = hopf.iterated_coproduct_mon(a, 3)
        B3 = hopf.iterated_coproduct_mon(b, 3)
        for (a1, a2, a3), x in A3.items():
            left = H.multiply(hopf.antipode_mon(a1), {a3: one})
            for (b1, b2, b3), y in B3.items():
                right = H.multiply(hopf.antipode_mon(b1), {b3: one})
                v = r(left, right)
                if v:
                    add_term(out, (b2, a2), x * y * v)
        return out

    def psi(self, f, g):
        out = {}
        for m, c in f.items():
            for n, v in g.items():
                add_scaled(out, self.psi_mon(m, n), c * v)
        return out


# cochain twists

def twist_product(a, b, hopf, form, form_bar):
    """a ·_φ b = φ(a(1), b(1)) a(2) b(2) φ̄(a(3), b(3)) on a Hopf algebra."""
    H = hopf.pres
    out = {}
    for m, c in a.items():
        for n, v in b.items():
            for (a1, a2, a3), x in hopf.iterated_coproduct_mon(m, 3).items():
                for (b1, b2, b3), y in hopf.iterated_coproduct_mon(n, 3).items():
                    f = form.value(a1, b1)
                    if not f:
                        continue
                    g = form_bar.value(a3, b3)
                    if g:
                        add_scaled(out, H.mul(a2, b2), c * v * x * y * f * g)
    return out


def twist_comodule_product(a, b, coaction, form_bar):
    """Twisted product of a comodule algebra: f • g = f0 g0 φ̄(f1, g1)."""
    A = coaction.A
    out = {}
    for m, c in a.items():
        for n, v in b.items():
            for (f0, f1), x in coaction.coact_mon(m).items():
                for (g0, g1), y in coaction.coact_mon(n).items():
                    k = form_bar.value(f1, g1)
                    if k:
                        add_scaled(out, A.mul(f0, g0), c * v * x * y * k)
    return out
