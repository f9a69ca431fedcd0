"""Chain-level operators, their matrices on truncation windows, and homology.

A chain is a dict {(m0, m1, ..., mn): c} of normal monomials; leg 0 is the
coefficient module, which here is always the algebra itself acting on both
sides by multiplication.  Operators are built per basis tensor and cached,
then assembled into sparse matrices on blocks of fixed multidegree.
"""

import itertools
import json
import random

from .braid import IndexOutOfRange, braid_pair, psi_block
from .hopf import MapUndefined
from .linalg import Echelon
from .ncalgebra import AlgebraError, Window, add_scaled, add_term


class WindowOverflow(AlgebraError):
    pass


class NotAComplex(AlgebraError):
    pass


class NotDiagonalizable(AlgebraError):
    pass


def _apply(fn, chain):
    out = {}
    for key, c in chain.items():
        add_scaled(out, fn(key), c)
    return out


def chain_str(chain, pres):
    if not chain:
        return "0"
    fmt = pres.field.fmt
    parts = []
    for key in sorted(chain, key=lambda k: [pres.sort_key(m) for m in k]):
        legs = " ⊗ ".join(pres.mon_str(m) for m in key)
        c = fmt(chain[key])
        parts.append(legs if c == "1" else "(%s)*%s" % (c, legs))
    return " + ".join(parts)


class ChainOps:
    """Faces, degeneracies, cyclic operators and module actions for one bundle."""

    def __init__(self, bundle):
        self.bundle = bundle
        self.P = bundle.pres
        self.F = self.P.field
        self.braiding = bundle.braiding
        self.sigma = bundle.sigma
        self.hopf = bundle.hopf
        self.one = self.P.one_mon
        self._face = {}
        self._t = {}
        self._ract = {}

    # basic pieces

    def mul_legs(self, key, j):
        """μ_{j,j+1} on one basis tensor."""
        head, tail = key[:j], key[j + 2:]
        return {head + (m,) + tail: c for m, c in self.P.mul(key[j], key[j + 1]).items()}

    def move_last_front(self, chain):
        """Ψ_{[0,n-1],n}: braid the last leg to position 0."""
        for key in chain:
            n = len(key) - 1
            break
        else:
            return {}
        return psi_block(chain, 0, n - 1, self.braiding)

    def sigma_leg0(self, chain, inverse=False):
        out = {}
        for key, c in chain.items():
            for m, v in self.sigma.apply_mon(key[0], inverse).items():
                add_term(out, (m,) + key[1:], c * v)
        return out

    # faces

    def face_key(self, j, key):
        n = len(key) - 1
        if n < 1 or not 0 <= j <= n:
            raise IndexOutOfRange("face d_%d undefined on a chain of arity %d" % (j, n))
        ck = (j, key)
        hit = self._face.get(ck)
        if hit is not None:
            return hit
        if j < n:
            res = self.mul_legs(key, j)
        else:
            moved = self.sigma_leg0(self.move_last_front({key: self.F.one}))
            res = {}
            for k2, c in moved.items():
                add_scaled(res, self.mul_legs(k2, 0), c)
        self._face[ck] = res
        return res

    def face(self, j, chain):
        return _apply(lambda k: self.face_key(j, k), chain)

    def b_key(self, key):
        out = {}
        for j in range(len(key)):
            add_scaled(out, self.face_key(j, key), self.F.one if j % 2 == 0 else -self.F.one)
        return out

    def b(self, chain):
        return _apply(self.b_key, chain)

    def b_prime_key(self, key):
        out = {}
        for j in range(len(key) - 1):
            add_scaled(out, self.face_key(j, key), self.F.one if j % 2 == 0 else -self.F.one)
        return out

    def b_prime(self, chain):
        return _apply(self.b_prime_key, chain)

    def boundary(self, chain, variant="hochschild_b"):
        if variant == "hochschild_b":
            return self.b(chain)
        if variant == "bar_bprime":
            return self.b_prime(chain)
        raise AlgebraError("unknown boundary variant %r" % variant)

    # degeneracies and cyclic operators

    def degeneracy(self, i, chain):
        """s_i inserts the unit after leg i; i = -1 puts it in front."""
        out = {}
        for key, c in chain.items():
            if not -1 <= i <= len(key) - 1:
                raise IndexOutOfRange("degeneracy s_%d undefined on arity %d" % (i, len(key) - 1))
            add_term(out, key[:i + 1] + (self.one,) + key[i + 1:], c)
        return out

    def t_key(self, key):
        hit = self._t.get(key)
        if hit is not None:
            return hit
        if len(key) == 1:
            res = {(m,): c for m, c in self.sigma.apply_mon(key[0]).items()}
        else:
            res = self.sigma_leg0(self.move_last_front({key: self.F.one}))
        self._t[key] = res
        return res

    def t(self, chain, power=1):
        for _ in range(power):
            chain = _apply(self.t_key, chain)
        return chain

    def T(self, chain):
        for key in chain:
            return self.t(chain, len(key))
        return {}

    def cyclic_op(self, chain, which):
        if which == "t":
            return self.t(chain)
        if which == "T":
            return self.T(chain)
        if isinstance(which, tuple) and which[0] == "degeneracy":
            return self.degeneracy(which[1], chain)
        raise AlgebraError("unknown cyclic operator %r" % (which,))

    def connes_B(self, chain):
        """s_{-1} ∘ Σ_i (-1)^{ni} t^i, before passing to any quotient."""
        out = {}
        for key, c in chain.items():
            n = len(key) - 1
            cur = {key: c}
            for i in range(n + 1):
                add_scaled(out, cur, -self.F.one if (n * i) % 2 else self.F.one)
                cur = self.t(cur)
        return self.degeneracy(-1, out)

    # actions of the braided enveloping algebra

    def ae_product(self, x, y):
        """(a⊗b)(c⊗d) = (μ⊗μ)Ψ^-1_{2,3}Ψ^-1_{1,2}(a⊗b⊗c⊗d) on tensor elements."""
        P = self.P
        out = {}
        for (a, b), c1 in x.items():
            for (c, d), c2 in y.items():
                for (c_, b_), c3 in self.braiding.psi_inv(b, c).items():
                    for (d_, b__), c4 in self.braiding.psi_inv(b_, d).items():
                        k = c1 * c2 * c3 * c4
                        left = P.mul(a, c_)
                        right = P.mul(d_, b__)
                        for m, u in left.items():
                            for n, v in right.items():
                                add_term(out, (m, n), k * u * v)
        return out

    def ae_left(self, x, m):
        """▶(a⊗b⊗m) = a·m'·b' where Ψ^-1(b⊗m) = m'⊗b'."""
        P = self.P
        # collect a ⊗ m' ⊗ b' first, then multiply each distinct triple once
        acc = {}
        for (a, b), c1 in x.items():
            for mm, c2 in m.items():
                for (m_, b_), c3 in self.braiding.psi_inv(b, mm).items():
                    add_term(acc, (a, m_, b_), c1 * c2 * c3)
        out = {}
        for word, c in acc.items():
            add_scaled(out, P.mul_word(word), c)
        return out

    def ae_right(self, m, x):
        """◀(m⊗a⊗b) = σ(b')·(ma)' where Ψ(ma⊗b) = b'⊗(ma)'."""
        P = self.P
        acc = {}
        for mm, c1 in m.items():
            for (a, b), c2 in x.items():
                for ma, u in P.mul(mm, a).items():
                    add_term(acc, (ma, b), c1 * c2 * u)
        pairs = {}
        for (ma, b), c in acc.items():
            add_scaled(pairs, self.braiding.psi(ma, b), c)
        out = {}
        for (b_, ma_), c in pairs.items():
            add_scaled(out, P.multiply(self.sigma.apply_mon(b_), {ma_: self.F.one}), c)
        return out

    def recovered_left(self, a, m):
        """▷ := ▶(id ⊗ η ⊗ id)."""
        return self.ae_left({(ak, self.one): c for ak, c in a.items()}, m)

    def recovered_right(self, m, a):
        """◁ := ▶(η ⊗ id ⊗ id)(σ ⊗ id)Ψ."""
        out = {}
        for (a_, m_), c in braid_pair(m, a, self.braiding).items():
            for s, v in self.sigma.apply_mon(a_).items():
                add_scaled(out, self.ae_left({(self.one, s): self.F.one}, {m_: self.F.one}), c * v)
        return out

    def recovered_left_from_right(self, a, m):
        """▷ := ◀(id ⊗ η ⊗ id)(id ⊗ σ^-1)Ψ^-1."""
        out = {}
        for (m_, a_), c in braid_pair(a, m, self.braiding, inverse=True).items():
            for s, v in self.sigma.apply_mon(a_, inverse=True).items():
                add_scaled(out, self.ae_right({m_: self.F.one}, {(self.one, s): self.F.one}), c * v)
        return out

    def recovered_right_from_right(self, m, a):
        """◁ := ◀(id ⊗ id ⊗ η)."""
        return self.ae_right(m, {(ak, self.one): c for ak, c in a.items()})

    # the right A-module R(M)

    def _need_hopf(self):
        if self.hopf is None:
            raise MapUndefined("%s carries no Hopf structure" % self.bundle.name)

    def _sigma_s_inv(self, m):
        out = {}
        for s, c in self.hopf.antipode_inv_mon(m).items():
            add_scaled(out, self.sigma.apply_mon(s), c)
        return out

    def r_action_direct(self, m, a):
        """m ◀ a = Σ σS^-1(a1')·m'·a2 with Ψ(m⊗a1) = a1'⊗m', on monomials."""
        self._need_hopf()
        P = self.P
        out = {}
        for (a1, a2), c in self.hopf.coproduct_mon(a).items():
            for (a1_, m_), v in self.braiding.psi(m, a1).items():
                left = P.multiply(self._sigma_s_inv(a1_), {m_: self.F.one})
                add_scaled(out, P.multiply(left, {a2: self.F.one}), c * v)
        return out

    def r_action_mon(self, m, a):
        """m ◀ a iterated over the letters of a."""
        key = (m, a)
        hit = self._ract.get(key)
        if hit is not None:
            return hit
        split = self.P.split_last(a)
        if split is None:
            res = {m: self.F.one}
        elif self.P.length(a) == 1:
            res = self.r_action_direct(m, a)
        else:
            rest, l = split
            lm = self.P.letter_mon(l)
            res = {}
            for mm, c in self.r_action_mon(m, rest).items():
                add_scaled(res, self.r_action_mon(mm, lm), c)
        self._ract[key] = res
        return res

    def r_action(self, m, a):
        out = {}
        for mm, c1 in m.items():
            for aa, c2 in a.items():
                add_scaled(out, self.r_action_mon(mm, aa), c1 * c2)
        return out

    def module_action(self, m, h, which):
        if which == "Ae_left":
            return self.ae_left(h, m)
        if which == "Ae_right":
            return self.ae_right(m, h)
        if which == "R_right":
            return self.r_action(m, h)
        raise AlgebraError("unknown action %r" % which)

    # ξ maps

    def xi1_key(self, key, prime=False):
        self._need_hopf()
        P = self.P
        m, a, tail = key[0], key[1], key[2:]
        out = {}
        for (a1, a2), c in self.hopf.coproduct_mon(a).items():
            for (a1_, m_), v in self.braiding.psi(m, a1).items():
                s = self.sigma.apply_mon(a1_) if prime else self._sigma_s_inv(a1_)
                for sm, w in s.items():
                    for pm, z in P.mul(sm, m_).items():
                        add_term(out, (pm, a2) + tail, c * v * w * z)
        return out

    def xi(self, k, chain, prime=False):
        """ξ_k (or ξ'_k) acting on legs 0..k of the chain."""
        if k == 0:
            return chain
        if k == 1:
            return _apply(lambda key: self.xi1_key(key, prime), chain)
        if not prime:
            chain = self.xi(k - 1, chain)
        chain = psi_block(chain, 1, k - 1, self.braiding)
        chain = _apply(lambda key: self.xi1_key(key, prime), chain)
        chain = psi_block(chain, 1, k - 1, self.braiding, inverse=True)
        if prime:
            chain = self.xi(k - 1, chain, prime=True)
        return chain

    def xi_map(self, chain, variant="xi", n=None):
        if n is None:
            for key in chain:
                n = len(key) - 1
                break
            else:
                return {}
        return self.xi(n, chain, prime=(variant != "xi"))

    def d_tilde_0(self, chain):
        """◀ ⊗ id: the first tensor leg acts on the module leg."""
        out = {}
        for key, c in chain.items():
            for m, v in self.r_action_mon(key[0], key[1]).items():
                add_term(out, (m,) + key[2:], c * v)
        return out

    def d_tilde_last(self, chain):
        """id ⊗ ε on the last leg."""
        self._need_hopf()
        out = {}
        for key, c in chain.items():
            e = self.hopf.counit_mon(key[-1])
            if e:
                add_term(out, key[:-1], c * e)
        return out

    def b_tilde(self, chain):
        """d̃_0 + Σ_{j=1}^{n} (-1)^j d_j + (-1)^{n+1} d̃_{n+1} on M ⊗ A^{n+1}."""
        out = {}
        one = self.F.one
        for key, c in chain.items():
            n = len(key) - 2
            term = {key: c}
            add_scaled(out, self.d_tilde_0(term), one)
            for j in range(1, n + 1):
                add_scaled(out, _apply(lambda k: self.mul_legs(k, j), term), one if j % 2 == 0 else -one)
            add_scaled(out, self.d_tilde_last(term), one if (n + 1) % 2 == 0 else -one)
        return out


# windows and matrices

def chain_basis(pres, n, degree, max_filtration, normalized=False):
    """Basis tensors with n+1 legs, total filtration ≤ max_filtration and the given multidegree.

    normalized drops tensors with the unit in any of legs 1..n.
    """
    pool = [(m, pres.filtration(m), pres.multidegree(m))
            for m in pres.enumerate_basis(Window(max_filtration))]
    nonneg = all(w >= 0 for g in pres.grading for w in g)
    one = pres.one_mon
    degree = tuple(degree)
    out = []

    def rec(i, prefix, f, deg):
        if i == n + 1:
            if deg == degree:
                out.append(tuple(prefix))
            return
        for m, fm, dm in pool:
            if f + fm > max_filtration:
                break
            if normalized and i >= 1 and m == one:
                continue
            nd = tuple(a + b for a, b in zip(deg, dm))
            if nonneg and any(a > b for a, b in zip(nd, degree)):
                continue
            prefix.append(m)
            rec(i + 1, prefix, f + fm, nd)
            prefix.pop()

    rec(0, [], 0, tuple(0 for _ in degree))
    return out


class LinearOperator:
    """Sparse matrix between two indexed bases; columns are dicts {row: scalar}."""

    def __init__(self, source, target, columns, name=""):
        self.source = list(source)
        self.target = list(target)
        self.columns = columns
        self.name = name

    @property
    def shape(self):
        return len(self.target), len(self.source)

    def is_zero(self):
        return not any(self.columns)

    def rank(self):
        return fast_rank(self.columns)

    def apply_vector(self, vec):
        out = {}
        for j, c in vec.items():
            for r, v in self.columns[j].items():
                add_term(out, r, c * v)
        return out

    def compose(self, other):
        """self ∘ other."""
        return LinearOperator(other.source, self.target,
                              [self.apply_vector(col) for col in other.columns],
                              name="%s∘%s" % (self.name, other.name))

    def __eq__(self, other):
        return (isinstance(other, LinearOperator) and self.source == other.source
                and self.target == other.target and self.columns == other.columns)

    def __repr__(self):
        return "LinearOperator(%s, %dx%d)" % (self.name, *self.shape)


def assemble_operator(op, source, target, project=None, name=""):
    """Matrix of a chain-level operator; op maps a basis tensor to a chain.

    project, when given, turns an output chain into {row: value} itself.
    Otherwise every output tensor must lie in the target basis.
    """
    index = {k: i for i, k in enumerate(target)}
    cols = []
    for key in source:
        out = op(key)
        if project is not None:
            cols.append(project(out))
            continue
        col = {}
        for k, v in out.items():
            r = index.get(k)
            if r is None:
                raise WindowOverflow("%s: output tensor %r escapes the target window" % (name, k))
            col[r] = v
        cols.append(col)
    return LinearOperator(source, target, cols, name=name)


# homology of a finite complex

def _relabel(columns):
    """Row relabelling that puts rarely used rows first; pivots on them cut fill-in."""
    count = {}
    for col in columns:
        for r in col:
            count[r] = count.get(r, 0) + 1
    order = sorted(count, key=lambda r: (count[r], r))
    return {r: i for i, r in enumerate(order)}


def _echelon_of(columns, track=False):
    """Echelon of the columns (processed shortest first) in relabelled rows.

    Returns (echelon, relabel, kernel combos over original column indices).
    """
    relabel = _relabel(columns)
    e = Echelon(track=track)
    ker = []
    for j in sorted(range(len(columns)), key=lambda j: (len(columns[j]), j)):
        k = e.add({relabel[r]: v for r, v in columns[j].items()}, j)
        if k is not None and track:
            ker.append(k)
    return e, relabel, ker


def fast_rank(columns):
    return _echelon_of(columns)[0].rank


def homology_dims(maps, sizes, field, preferred=True):
    """maps[n]: C_n -> C_{n-1} (maps[0] unused, may be None); sizes[n] = dim C_n.

    Returns a list of dicts with kernel, image, homology and generators as
    coefficient vectors.  Generators prefer single basis vectors that are cycles.
    """
    top = len(sizes) - 1
    for n in range(1, top):
        if maps[n] is not None and maps[n + 1] is not None:
            if not maps[n].compose(maps[n + 1]).is_zero():
                raise NotAComplex("boundary composite d_%d d_%d is nonzero" % (n, n + 1))
    ranks = [0] * (top + 2)
    for n in range(1, top + 1):
        if maps[n] is not None:
            ranks[n] = fast_rank(maps[n].columns)
    out = []
    for n in range(top):
        dn = maps[n] if n >= 1 else None
        dim_ker = sizes[n] - ranks[n]
        dim_img = ranks[n + 1]
        dim_h = dim_ker - dim_img
        gens = []
        if dim_h:
            if dn is not None:
                ker = _echelon_of(dn.columns, track=True)[2]
                cands = [{j: field.one} for j, col in enumerate(dn.columns) if not col]
            else:
                ker = [{j: field.one} for j in range(sizes[n])]
                cands = []
            if not preferred:
                cands = []
            dn1 = maps[n + 1]
            cols = dn1.columns if dn1 is not None else []
            img, relabel, _ = _echelon_of(cols)
            nxt = len(relabel)
            for v in cands + ker:
                w = {}
                for r, c in v.items():
                    if r not in relabel:
                        relabel[r] = nxt
                        nxt += 1
                    w[relabel[r]] = field(c) if isinstance(c, int) else c
                if img.add(w) is None:
                    gens.append(v)
                    if len(gens) == dim_h:
                        break
        out.append({"n": n, "kernel": dim_ker, "image": dim_img, "dim": dim_h,
                    "generators": gens})
    return out


def kernel_window(op):
    """dim ker(f|F_D) with a basis; exact because ker(f) ∩ F_D = ker(f|F_D)."""
    return _echelon_of(op.columns, track=True)[2]


def membership_certificates(op, targets):
    """For each target vector, a preimage {source index: coeff} under op, or None."""
    e, relabel, _ = _echelon_of(op.columns, track=True)
    out = []
    for v in targets:
        if any(r not in relabel for r in v):
            out.append(None)
            continue
        out.append(e.express({relabel[r]: c for r, c in v.items()}))
    return out


def vector_to_chain(vec, basis, field=None):
    out = {}
    for j, c in vec.items():
        if field is not None:
            c = field(c) if isinstance(c, int) else c
        add_term(out, basis[j], c)
    return out


# reports

class HomologyReport:
    def __init__(self, example, braiding, lam, method, scalar_mode, truncation):
        self.example = example
        self.braiding = braiding
        self.lam = lam
        self.method = method
        self.scalar_mode = scalar_mode
        self.truncation = dict(truncation)
        self.results = []

    def add(self, n, degree, dim, soundness="exact", generators=(), kernel=None, image=None):
        if dim < 0:
            raise AlgebraError("negative homology dimension")
        self.results.append({"n": n, "degree": None if degree is None else list(degree),
                             "dim": dim, "soundness": soundness,
                             "generators": list(generators), "kernel": kernel, "image": image})

    def sorted_results(self):
        return sorted(self.results, key=lambda r: (r["n"], r["degree"] or []))

    def dims(self, max_n=None):
        """Total dimension per degree n."""
        top = max((r["n"] for r in self.results), default=-1)
        if max_n is not None:
            top = max_n
        out = [0] * (top + 1)
        for r in self.results:
            if r["n"] <= top:
                out[r["n"]] += r["dim"]
        return out

    def by_degree(self, n):
        return {tuple(r["degree"]) if r["degree"] is not None else None: r["dim"]
                for r in self.results if r["n"] == n and r["dim"]}

    def generators(self, n):
        return [g for r in self.sorted_results() if r["n"] == n for g in r["generators"]]

    def to_dict(self):
        return {
            "example": self.example,
            "braiding": self.braiding,
            "sigma": {"lambda": self.lam},
            "method": self.method,
            "scalar_mode": self.scalar_mode,
            "truncation": self.truncation,
            "results": [{"n": r["n"], "degree": r["degree"], "dim": r["dim"],
                         "soundness": r["soundness"], "generators": r["generators"]}
                        for r in self.sorted_results()],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)


REPORT_SCHEMA = {
    "type": "object",
    "required": ["example", "braiding", "sigma", "method", "scalar_mode", "truncation", "results"],
    "properties": {
        "example": {"type": "string"},
        "braiding": {"type": "string"},
        "sigma": {"type": "object", "required": ["lambda"]},
        "method": {"enum": ["bar", "resolution", "bicomplex"]},
        "scalar_mode": {"anyOf": [{"const": "symbolic"},
                                  {"type": "object", "required": ["specialized_p"]}]},
        "truncation": {"type": "object"},
        "results": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["n", "degree", "dim", "soundness", "generators"],
                "properties": {
                    "n": {"type": "integer"},
                    "degree": {"anyOf": [{"type": "null"},
                                         {"type": "array", "items": {"type": "integer"}}]},
                    "dim": {"type": "integer", "minimum": 0},
                    "soundness": {"enum": ["exact", "kernel-window", "certified-zero"]},
                    "generators": {"type": "array", "items": {"type": "string"}},
                },
            },
        },
    },
}


# drivers

def graded_degrees(pres, max_weight):
    """Multidegrees of monomials of filtration ≤ max_weight, in a stable order."""
    degs = {pres.multidegree(m) for m in pres.enumerate_basis(Window(max_weight))}
    return sorted(degs, key=lambda d: (sum(abs(x) for x in d), d))


def _drop_degenerate(one):
    def keep(key):
        return all(m != one for m in key[1:])
    return keep


def _normalized_projector(index, one, name):
    keep = _drop_degenerate(one)

    def project(chain):
        col = {}
        for k, v in chain.items():
            if not keep(k):
                continue
            r = index.get(k)
            if r is None:
                raise WindowOverflow("%s: output tensor %r escapes the target window" % (name, k))
            col[r] = v
        return col
    return project


def bar_complex(ops, degree, max_filtration, max_n, normalized=True):
    """Bases and boundary matrices of C_0..C_{max_n+1} in one block."""
    P = ops.P
    bases = [chain_basis(P, n, degree, max_filtration, normalized) for n in range(max_n + 2)]
    maps = [None]
    for n in range(1, max_n + 2):
        index = {k: i for i, k in enumerate(bases[n - 1])}
        name = "b_%d" % n
        project = _normalized_projector(index, ops.one, name) if normalized else None
        maps.append(assemble_operator(ops.b_key, bases[n], bases[n - 1], project=project, name=name))
    return bases, maps


def _describe_mode(field):
    return field.describe()


def hochschild_bar(bundle, max_n, max_weight, normalized=True, ops=None, degrees=None,
                   check_splitting=True):
    """Braided Hochschild homology from the b-complex, block by block (graded bundles)."""
    ops = ops or ChainOps(bundle)
    P = bundle.pres
    report = HomologyReport(bundle.name, getattr(bundle.braiding, "name", "flip"),
                            bundle.extras.get("lambda_label", "generic"), "bar",
                            _describe_mode(P.field),
                            {"max_n": max_n, "max_weight": max_weight, "normalized": normalized})
    if degrees is None:
        degrees = graded_degrees(P, max_weight)
    for deg in degrees:
        D = sum(abs(x) for x in deg) if bundle.grading == "multidegree" else max_weight
        bases, maps = bar_complex(ops, deg, D, max_n, normalized)
        if check_splitting:
            for n in range(max_n + 2):
                check_t_splitting(ops, bases[n], normalized)
        rows = homology_dims(maps, [len(b) for b in bases], P.field)
        for r in rows:
            if r["n"] > max_n:
                continue
            gens = [chain_str(vector_to_chain(g, bases[r["n"]], P.field), P) for g in r["generators"]]
            report.add(r["n"], deg, r["dim"], "exact", gens, r["kernel"], r["image"])
    return report


def check_t_splitting(ops, basis, normalized=True):
    """ker(1-T) ⊕ im(1-T) = C_n on the block, via rank(1-T) = rank((1-T)^2)."""
    if not basis:
        return True
    index = {k: i for i, k in enumerate(basis)}
    project = _normalized_projector(index, ops.one, "T") if normalized else None

    def one_minus_T(key):
        out = {key: ops.F.one}
        add_scaled(out, ops.T({key: ops.F.one}), -ops.F.one)
        return out

    op = assemble_operator(one_minus_T, basis, basis, project=project, name="1-T")
    r1 = op.rank()
    r2 = op.compose(op).rank()
    if r1 != r2:
        raise NotDiagonalizable("ker(1-T) and im(1-T) intersect: rank %d vs %d" % (r1, r2))
    return True


class CyclicQuotient:
    """C_n / (D_n + im(1-T)) on one block, with D_n the degenerate tensors."""

    def __init__(self, ops, degree, max_filtration, n, check_splitting=True):
        self.ops = ops
        self.n = n
        self.basis = chain_basis(ops.P, n, degree, max_filtration, normalized=True)
        self.index = {k: i for i, k in enumerate(self.basis)}
        self._drop = _normalized_projector(self.index, ops.one, "C_%d" % n)
        one = ops.F.one

        def one_minus_T(key):
            out = {key: one}
            add_scaled(out, ops.T({key: one}), -one)
            return out

        rel = assemble_operator(one_minus_T, self.basis, self.basis, project=self._drop, name="1-T")
        if check_splitting and rel.rank() != rel.compose(rel).rank():
            raise NotDiagonalizable("T does not split C_%d in block %s" % (n, degree))
        self.relations = Echelon()
        for col in rel.columns:
            self.relations.add(col)
        self.reps = [i for i in range(len(self.basis)) if i not in self.relations.pivots]
        self.qindex = {i: j for j, i in enumerate(self.reps)}

    def __len__(self):
        return len(self.reps)

    def project(self, chain):
        v, _ = self.relations.reduce(self._drop(chain))
        return {self.qindex[r]: c for r, c in v.items()}

    def rep_keys(self):
        return [self.basis[i] for i in self.reps]


def cyclic_blocks(ops, degree, max_filtration, top, check_splitting=True):
    """Quotients Q_0..Q_top and the matrices of b̄ (Q_n -> Q_{n-1}) and B̄ (Q_n -> Q_{n+1})."""
    Q = [CyclicQuotient(ops, degree, max_filtration, n, check_splitting) for n in range(top + 1)]
    bmaps = [None]
    for n in range(1, top + 1):
        bmaps.append(assemble_operator(ops.b_key, Q[n].rep_keys(), Q[n - 1].rep_keys(),
                                       project=Q[n - 1].project, name="b_%d" % n))
    Bmaps = []
    for n in range(top):
        Bmaps.append(assemble_operator(lambda k: ops.connes_B({k: ops.F.one}), Q[n].rep_keys(),
                                       Q[n + 1].rep_keys(), project=Q[n + 1].project,
                                       name="B_%d" % n))
    return Q, bmaps, Bmaps


def mixed_complex_failures(bmaps, Bmaps):
    """Names of the identities b² = 0, B² = 0, bB + Bb = 0 that fail on the block."""
    bad = []
    for n in range(2, len(bmaps)):
        if not bmaps[n - 1].compose(bmaps[n]).is_zero():
            bad.append("b^2 at %d" % n)
    for n in range(len(Bmaps) - 1):
        if not Bmaps[n + 1].compose(Bmaps[n]).is_zero():
            bad.append("B^2 at %d" % n)
    for n in range(1, len(Bmaps)):
        # on Q_n: b_{n+1} B_n + B_{n-1} b_n
        lhs = bmaps[n + 1].compose(Bmaps[n]) if n + 1 < len(bmaps) else None
        rhs = Bmaps[n - 1].compose(bmaps[n])
        if lhs is None:
            continue
        total = [dict(c) for c in lhs.columns]
        for j, col in enumerate(rhs.columns):
            for r, v in col.items():
                add_term(total[j], r, v)
        if any(total):
            bad.append("bB+Bb at %d" % n)
    return bad


def total_complex(Q, bmaps, Bmaps, top):
    """Tot_m = ⊕_k Q_{m-2k} with differential b + B, for m = 0..top."""
    sizes = [len(q) for q in Q]
    comps = []
    for m in range(top + 1):
        parts = [j for j in range(m, -1, -2)]
        offs, o = {}, 0
        for j in parts:
            offs[j] = o
            o += sizes[j]
        comps.append((parts, offs, o))
    maps = [None]
    for m in range(1, top + 1):
        parts, offs, size = comps[m]
        _, toffs, tsize = comps[m - 1]
        cols = [None] * size
        for j in parts:
            for i in range(sizes[j]):
                col = {}
                if j >= 1:
                    for r, v in bmaps[j].columns[i].items():
                        add_term(col, toffs[j - 1] + r, v)
                if j + 1 < m:
                    for r, v in Bmaps[j].columns[i].items():
                        add_term(col, toffs[j + 1] + r, v)
                cols[offs[j] + i] = col
        maps.append(LinearOperator(range(size), range(tsize), cols, name="tot_%d" % m))
    return maps, [c[2] for c in comps]


def cyclic_bicomplex(bundle, max_n, max_weight, ops=None, degrees=None, check=True):
    """Braided cyclic homology HC_0..HC_max_n from the (b, B) total complex per block."""
    ops = ops or ChainOps(bundle)
    P = bundle.pres
    report = HomologyReport(bundle.name, getattr(bundle.braiding, "name", "flip"),
                            bundle.extras.get("lambda_label", "generic"), "bicomplex",
                            _describe_mode(P.field),
                            {"max_n": max_n, "max_weight": max_weight, "normalized": True})
    report.structural_failures = []
    if degrees is None:
        degrees = graded_degrees(P, max_weight)
    top = max_n + 1
    for deg in degrees:
        D = sum(abs(x) for x in deg)
        t = top
        Q, bmaps, Bmaps = cyclic_blocks(ops, deg, D, t, check_splitting=check)
        if check:
            bad = mixed_complex_failures(bmaps, Bmaps)
            if bad:
                report.structural_failures.append((deg, bad))
        maps, sizes = total_complex(Q, bmaps, Bmaps, t)
        rows = homology_dims(maps, sizes, P.field, preferred=False)
        for r in rows:
            if r["n"] <= max_n:
                report.add(r["n"], deg, r["dim"], "exact", [], r["kernel"], r["image"])
    return report


# resolutions

def _homogeneous_degree(pres, e):
    degs = {pres.multidegree(m) for m in e}
    if len(degs) != 1:
        raise AlgebraError("resolution entry is not homogeneous")
    return degs.pop()


def resolution_shifts(res):
    """Multidegree shift of each free generator, starting from 0 on P_0."""
    P = res.pres
    dim = len(P.grading[0])
    shifts = [[tuple([0] * dim)] * res.ranks[0]]
    for k, M in enumerate(res.maps):
        row_shifts = []
        for row in M:
            s = None
            for j, e in enumerate(row):
                if e:
                    d = _homogeneous_degree(P, e)
                    cand = tuple(a + b for a, b in zip(d, shifts[k][j]))
                    if s is not None and s != cand:
                        raise AlgebraError("resolution row is not homogeneous")
                    s = cand
            row_shifts.append(s)
        shifts.append(row_shifts)
    return shifts


def tensored_map(ops, M):
    """(m_i) ↦ (Σ_i m_i ◀ M_ij)_j as a function on (i, monomial) basis pairs."""
    def op(key):
        i, m = key
        out = {}
        for j, e in enumerate(M[i]):
            for a, c in e.items():
                for mm, v in ops.r_action_mon(m, a).items():
                    add_term(out, (j, mm), c * v)
        return out
    return op


def _graded_monomials(pres, degree):
    w = sum(degree)
    if any(x < 0 for x in degree):
        return []
    return pres.enumerate_basis(Window(w, multidegree=tuple(degree)))


def tor_from_resolution(bundle, max_weight, ops=None, degrees=None):
    """Tor^A(R(A), C) from the catalogued free resolution, per multidegree (graded bundles)."""
    ops = ops or ChainOps(bundle)
    res = bundle.resolution
    if res is None:
        from .models import NoResolution
        raise NoResolution(bundle.name)
    P = bundle.pres
    shifts = resolution_shifts(res)
    report = HomologyReport(bundle.name, getattr(bundle.braiding, "name", "flip"),
                            bundle.extras.get("lambda_label", "generic"), "resolution",
                            _describe_mode(P.field),
                            {"max_weight": max_weight, "ranks": res.ranks})
    if degrees is None:
        degrees = graded_degrees(P, max_weight)
    L = len(res.maps)
    for deg in degrees:
        bases = []
        for k in range(L + 1):
            b = []
            for i, s in enumerate(shifts[k]):
                rel = tuple(a - c for a, c in zip(deg, s))
                b.extend((i, m) for m in _graded_monomials(P, rel))
            bases.append(b)
        maps = [None]
        for k in range(1, L + 1):
            maps.append(assemble_operator(tensored_map(ops, res.maps[k - 1]), bases[k],
                                          bases[k - 1], name="phi_%d" % k))
        rows = homology_dims(maps + [None], [len(b) for b in bases] + [0], P.field)
        for r in rows:
            if r["n"] > L:
                continue
            gens = []
            for g in r["generators"]:
                out = {}
                for j, c in g.items():
                    i, m = bases[r["n"]][j]
                    add_term(out, (m, i), c)
                gens.append(_module_vector_str(out, P, res.ranks[r["n"]]))
            report.add(r["n"], deg, r["dim"], "exact", gens, r["kernel"], r["image"])
    return report


def _module_vector_str(vec, P, rank):
    parts = []
    for (m, i), c in sorted(vec.items(), key=lambda kv: (kv[0][1], P.sort_key(kv[0][0]))):
        c = P.field.fmt(P.field(c) if isinstance(c, int) else c)
        s = P.mon_str(m) if rank == 1 else "%s ⊗ e%d" % (P.mon_str(m), i + 1)
        parts.append(s if c == "1" else "(%s)*%s" % (c, s))
    return " + ".join(parts) if parts else "0"


def filtered_tensored_kernel(bundle, k, max_filtration, degree=None, ops=None):
    """ker of the map R(A)⊗P_k -> R(A)⊗P_{k-1} restricted to F_D (exact on the window).

    Only rank-1 sources are supported; the source is F_D of the algebra.
    """
    ops = ops or ChainOps(bundle)
    res = bundle.resolution
    M = res.maps[k - 1]
    if len(M) != 1:
        raise AlgebraError("filtered kernels are implemented for rank-one sources")
    P = bundle.pres
    mons = P.enumerate_basis(Window(max_filtration, multidegree=degree))
    src = [(0, m) for m in mons]
    op = tensored_map(ops, M)
    targets, cols = {}, []
    for key in src:
        col = {}
        for t, v in op(key).items():
            r = targets.setdefault(t, len(targets))
            col[r] = v
        cols.append(col)
    f = LinearOperator(src, list(targets), cols, name="phi_tilde")
    ker = kernel_window(f)
    return mons, [vector_to_chain(v, mons, P.field) for v in ker]


def boundary_certificates(bundle, max_filtration, targets, ops=None):
    """Membership of each target monomial in im(b_1 restricted to F_D), with preimages.

    Blocks are separated by multidegree; degenerate terms are kept (unnormalized).
    """
    ops = ops or ChainOps(bundle)
    P = bundle.pres
    by_deg = {}
    for m in targets:
        by_deg.setdefault(P.multidegree(m), []).append(m)
    out = {}
    for deg, ms in by_deg.items():
        src = chain_basis(P, 1, deg, max_filtration)
        tgt = chain_basis(P, 0, deg, max_filtration)
        op = assemble_operator(ops.b_key, src, tgt, name="b_1")
        index = {k: i for i, k in enumerate(tgt)}
        certs = membership_certificates(op, [{index[(m,)]: P.field.one} for m in ms])
        for m, c in zip(ms, certs):
            out[m] = None if c is None else vector_to_chain(c, src, P.field)
    return out


# lemma checks

def _unnormalized_bases(P, n, max_weight, graded=True):
    if graded:
        for deg in graded_degrees(P, max_weight):
            yield from chain_basis(P, n, deg, sum(abs(x) for x in deg))
    else:
        yield from chain_basis(P, n, None, max_weight)


def _differs(lhs, rhs):
    keys = set(lhs) | set(rhs)
    return any(lhs.get(k, 0) != rhs.get(k, 0) for k in keys)


def xi_lemma_failures(bundle, max_n=3, max_weight=6, ops=None):
    """Check ξ'ξ = id = ξξ' and the four conjugation identities on basis tensors.

    Returns a list of (identity, n, first failing key) triples; empty means all hold.
    d̃_0 uses the defining formula of the R-action (no letter iteration).
    """
    ops = ops or ChainOps(bundle)
    P = bundle.pres
    one = P.field.one
    graded = bundle.grading == "multidegree"
    bad = []

    def direct_d0(chain):
        out = {}
        for key, c in chain.items():
            for m, v in ops.r_action_direct(key[0], key[1]).items():
                add_term(out, (m,) + key[2:], c * v)
        return out

    for n in range(1, max_n + 1):
        seen = set()
        for key in _unnormalized_bases(P, n, max_weight, graded):
            ch = {key: one}
            if _differs(ops.xi(n, ops.xi(n, ch), prime=True), ch) and "xi'xi" not in seen:
                bad.append(("xi'xi=id", n, key))
                seen.add("xi'xi")
            if _differs(ops.xi(n, ops.xi(n, ch, prime=True)), ch) and "xixi'" not in seen:
                bad.append(("xixi'=id", n, key))
                seen.add("xixi'")
        for key in _unnormalized_bases(P, n + 1, max_weight, graded):
            ch = {key: one}
            lifted = ops.xi(n + 1, ch)
            checks = [("d0", 0, direct_d0(ch))]
            checks += [("d%d" % i, i, ops.face(i, ch)) for i in range(1, n + 1)]
            checks.append(("d_last", n + 1, ops.d_tilde_last(ch)))
            for name, j, expect in checks:
                if name in seen:
                    continue
                got = ops.xi(n, ops.face(j, lifted), prime=True)
                if _differs(got, expect):
                    bad.append(("xi' %s xi" % name, n, key))
                    seen.add(name)
    return bad


def _sample_element(P, rng, max_filtration, terms=2):
    mons = P.enumerate_basis(Window(max_filtration))
    out = {}
    for _ in range(rng.randint(1, terms)):
        add_term(out, rng.choice(mons), P.field(rng.randint(1, 5)))
    return out


def ae_lemma_failures(bundle, samples=100, seed=0, max_filtration=2, ops=None):
    """Action axioms for ▶ and ◀ and the recovery formulas, on random triples.

    Returns the names of the identities that failed at least once.
    """
    ops = ops or ChainOps(bundle)
    P = bundle.pres
    rng = random.Random(seed)
    mul = P.multiply
    sig = bundle.sigma
    bad = set()

    def tens(a, b):
        return {(x, y): c * d for x, c in a.items() for y, d in b.items()}

    def el():
        return _sample_element(P, rng, max_filtration)

    for _ in range(samples):
        a, b, c, d, m = el(), el(), el(), el(), el()
        x, y = tens(a, b), tens(c, d)
        xy = ops.ae_product(x, y)
        if _differs(ops.ae_left(xy, m), ops.ae_left(x, ops.ae_left(y, m))):
            bad.add("left action")
        if _differs(ops.ae_right(m, xy), ops.ae_right(ops.ae_right(m, x), y)):
            bad.add("right action")
        # recovered structures from ▶
        L = ops.recovered_left
        R = ops.recovered_right
        if _differs(L(a, m), mul(a, m)):
            bad.add("left recovery: a▷m = am")
        if _differs(R(m, a), mul(m, sig(a))):
            bad.add("left recovery: m◁a = mσ(a)")
        if _differs(L(mul(a, b), m), L(a, L(b, m))) or _differs(R(m, mul(a, b)), R(R(m, a), b)) \
                or _differs(R(L(a, m), b), L(a, R(m, b))):
            bad.add("left recovery: bimodule")
        # recovered structures from ◀
        L2 = ops.recovered_left_from_right
        R2 = ops.recovered_right_from_right
        if _differs(L2(a, m), mul(a, m)):
            bad.add("right recovery: a▷m = am")
        if _differs(R2(m, a), mul(m, a)):
            bad.add("right recovery: m◁a = ma")
        if _differs(R2(L2(a, m), b), L2(a, R2(m, b))):
            bad.add("right recovery: bimodule")
    return sorted(bad)


def counterexample_h1(bundle, witness=None):
    """dim H_1 of the subcomplex C^1 = im(1 - T) of a finite-dimensional algebra.

    Returns (dim, witness report) where the report says whether the witness
    chain lies in C^1_1, is a b-cycle, and is not a boundary from C^1_2.
    """
    ops = ChainOps(bundle)
    P = bundle.pres
    one = P.field.one
    mons = P.enumerate_basis(Window(8))  # the algebra is finite-dimensional
    bases = [list(itertools.product(mons, repeat=n + 1)) for n in range(3)]
    index = [{k: i for i, k in enumerate(b)} for b in bases]

    def one_minus_T(key):
        out = {key: one}
        add_scaled(out, ops.T({key: one}), -one)
        return out

    S = [assemble_operator(one_minus_T, bases[n], bases[n], name="1-T") for n in range(3)]
    bmap = [None] + [assemble_operator(ops.b_key, bases[n], bases[n - 1], name="b_%d" % n)
                     for n in (1, 2)]
    dim_c1 = S[1].rank()
    dim_z = dim_c1 - bmap[1].compose(S[1]).rank()
    dim_b = bmap[2].compose(S[2]).rank()
    report = None
    if witness is not None:
        w = {index[1][k]: c for k, c in witness.items()}
        span_c1 = Echelon()
        for col in S[1].columns:
            span_c1.add(col)
        span_b = Echelon()
        for col in bmap[2].compose(S[2]).columns:
            span_b.add(col)
        report = {
            "in_C1": span_c1.contains(w),
            "cycle": not ops.b(witness),
            "boundary": span_b.contains(w),
        }
    return dim_z - dim_b, report
